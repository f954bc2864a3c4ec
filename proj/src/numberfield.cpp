#include "arithcoh/numberfield.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace arithcoh {

namespace {

bool is_squarefree(long d) {
    unsigned long n = static_cast<unsigned long>(std::labs(d));
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

struct IntColumn {
    Integer x;
    Integer y;
};

struct Hnf {
    Integer a, b, c;
};

// Column Hermite normal form [[a, b], [0, c]] of the Z-span of the columns.
Hnf column_hnf(std::vector<IntColumn> cols, bool rational) {
    Hnf h;
    if (rational) {
        Integer g = 0;
        for (const auto& col : cols) g = gcd(g, col.x);
        if (g == 0) throw ArithcohError("zero ideal");
        h.a = g;
        h.b = 0;
        h.c = 1;
        return h;
    }

    IntColumn pivot{0, 0};
    std::vector<Integer> cleared;
    for (const auto& col : cols) {
        if (col.y == 0) {
            cleared.push_back(col.x);
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot.y.get_mpz_t(),
                   col.y.get_mpz_t());
        Integer u = col.y / g;
        Integer v = pivot.y / g;
        IntColumn next{s * pivot.x + t * col.x, s * pivot.y + t * col.y};
        cleared.push_back(u * pivot.x - v * col.x);
        pivot = next;
    }
    if (pivot.y < 0) {
        pivot.x = -pivot.x;
        pivot.y = -pivot.y;
    }
    Integer a = 0;
    for (const auto& x : cleared) a = gcd(a, x);
    if (a == 0 || pivot.y == 0) throw ArithcohError("Z-module is not of full rank");
    h.a = a;
    h.c = pivot.y;
    h.b = pivot.x % a;
    if (h.b < 0) h.b += a;
    return h;
}

Integer lcm_denominators(const std::vector<FieldElement>& gens) {
    Integer l = 1;
    for (const auto& g : gens) {
        l = lcm(l, Integer(g.x.get_den()));
        l = lcm(l, Integer(g.y.get_den()));
    }
    return l;
}

FieldElement omega() { return FieldElement(Rational(0), Rational(1)); }

// Numerical value of w at a place.
std::complex<double> omega_at(const NumberField& F, int place) {
    const double t = static_cast<double>(F.w_trace());
    const double root = std::sqrt(std::fabs(static_cast<double>(F.d())));
    if (F.place_is_complex(place)) {
        return (F.w_trace() == 1) ? std::complex<double>(0.5, 0.5 * root)
                                  : std::complex<double>(0.0, root);
    }
    const double sign = (place == 0) ? 1.0 : -1.0;
    return (F.w_trace() == 1) ? std::complex<double>(0.5 * (t + sign * root), 0.0)
                              : std::complex<double>(sign * root, 0.0);
}

} // namespace

NumberField NumberField::rational() { return NumberField(); }

NumberField NumberField::quadratic(long d) {
    if (d == 0 || d == 1) throw ArithcohError("quadratic field needs d not in {0, 1}");
    if (!is_squarefree(d)) throw ArithcohError("d = " + std::to_string(d) + " is not squarefree");
    NumberField F;
    F.kind_ = FieldKind::quadratic;
    F.d_ = d;
    const long r = ((d % 4) + 4) % 4;
    if (r == 1) {
        F.disc_ = d;
        F.w_trace_ = 1;
        F.w_norm_term_ = (d - 1) / 4;
    } else {
        F.disc_ = Integer(4) * d;
        F.w_trace_ = 0;
        F.w_norm_term_ = d;
    }
    if (d > 0) {
        F.r1_ = 2;
        F.r2_ = 0;
    } else {
        F.r1_ = 0;
        F.r2_ = 1;
    }
    return F;
}

NumberField make_field(FieldKind kind, long d) {
    return kind == FieldKind::rational ? NumberField::rational() : NumberField::quadratic(d);
}

std::string NumberField::label() const {
    if (is_rational()) return "Q";
    return "Q(sqrt(" + std::to_string(d_) + "))";
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    return FieldElement(a.x + b.x, a.y + b.y);
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    return FieldElement(a.x - b.x, a.y - b.y);
}

FieldElement mul(const NumberField& F, const FieldElement& a, const FieldElement& b) {
    // (x1 + y1 w)(x2 + y2 w) with w^2 = t w + s
    const Rational yy = a.y * b.y;
    Rational x = a.x * b.x + yy * F.w_norm_term();
    Rational y = a.x * b.y + a.y * b.x + yy * F.w_trace();
    return FieldElement(x, y);
}

FieldElement conjugate(const NumberField& F, const FieldElement& a) {
    // conj(w) = t - w
    return FieldElement(a.x + a.y * F.w_trace(), -a.y);
}

NormTrace norm_trace(const NumberField& F, const FieldElement& e) {
    if (F.is_rational()) return {e.x, e.x};
    const long t = F.w_trace();
    const long s = F.w_norm_term();
    Rational n = e.x * e.x + e.x * e.y * t - e.y * e.y * s;
    Rational tr = 2 * e.x + e.y * t;
    n.canonicalize();
    tr.canonicalize();
    return {n, tr};
}

FieldElement inverse(const NumberField& F, const FieldElement& a) {
    if (a.is_zero()) throw ArithcohError("inverse of zero field element");
    if (F.is_rational()) return FieldElement(Rational(1) / a.x);
    const Rational n = norm_trace(F, a).norm;
    const FieldElement c = conjugate(F, a);
    return FieldElement(c.x / n, c.y / n);
}

std::complex<double> embed_at(const NumberField& F, const FieldElement& e, int place) {
    if (F.is_rational()) return {e.x.get_d(), 0.0};
    return e.x.get_d() + e.y.get_d() * omega_at(F, place);
}

Eigen::VectorXd embed(const NumberField& F, const FieldElement& e) {
    Eigen::VectorXd v(F.degree());
    int k = 0;
    for (int p = 0; p < F.places(); ++p) {
        const auto z = embed_at(F, e, p);
        if (F.place_is_complex(p)) {
            v(k++) = std::numbers::sqrt2 * z.real();
            v(k++) = std::numbers::sqrt2 * z.imag();
        } else {
            v(k++) = z.real();
        }
    }
    return v;
}

std::array<FieldElement, 2> FractionalIdeal::z_basis() const {
    return {FieldElement(scale_ * Rational(a_)),
            FieldElement(scale_ * Rational(b_), scale_ * Rational(c_))};
}

std::string FractionalIdeal::to_string() const {
    std::ostringstream os;
    os << scale_.get_str() << "*[" << a_.get_str() << ", " << b_.get_str() << "; 0, "
       << c_.get_str() << "]";
    return os.str();
}

FractionalIdeal ideal_from_z_generators(const NumberField& F,
                                        const std::vector<FieldElement>& gens) {
    const Integer den = lcm_denominators(gens);
    std::vector<IntColumn> cols;
    cols.reserve(gens.size());
    for (const auto& g : gens) {
        Rational x = g.x * den;
        Rational y = g.y * den;
        x.canonicalize();
        y.canonicalize();
        cols.push_back({x.get_num(), y.get_num()});
    }
    const bool rational = F.is_rational();
    const Hnf h = column_hnf(std::move(cols), rational);

    const Integer content = rational ? h.a : gcd(gcd(h.a, h.b), h.c);
    Rational ratio(content, den);
    ratio.canonicalize();
    const Integer p = ratio.get_num();
    const Integer q = ratio.get_den();

    FractionalIdeal I;
    I.scale_ = Rational(Integer(1), q);
    if (rational) {
        I.a_ = p;
        I.b_ = 0;
        I.c_ = 1;
        return I;
    }
    I.a_ = p * (h.a / content);
    I.c_ = p * (h.c / content);
    I.b_ = (p * (h.b / content)) % I.a_;
    if (I.b_ < 0) I.b_ += I.a_;
    return I;
}

FractionalIdeal ideal_from_generators(const NumberField& F,
                                      const std::vector<FieldElement>& gens) {
    std::vector<FieldElement> z;
    bool nonzero = false;
    for (const auto& g : gens) {
        nonzero = nonzero || !g.is_zero();
        z.push_back(g);
        if (!F.is_rational()) z.push_back(mul(F, g, omega()));
    }
    if (!nonzero) throw ArithcohError("ideal_from_generators: all generators are zero");
    return ideal_from_z_generators(F, z);
}

FractionalIdeal unit_ideal(const NumberField& F) { return ideal_from_generators(F, {FieldElement(1)}); }

FractionalIdeal principal_ideal(const NumberField& F, const FieldElement& e) {
    return ideal_from_generators(F, {e});
}

FractionalIdeal ideal_mul(const NumberField& F, const FractionalIdeal& a,
                          const FractionalIdeal& b) {
    const auto ab = a.z_basis();
    const auto bb = b.z_basis();
    const int n = F.degree();
    std::vector<FieldElement> prods;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prods.push_back(mul(F, ab[i], bb[j]));
    return ideal_from_z_generators(F, prods);
}

FractionalIdeal ideal_conjugate(const NumberField& F, const FractionalIdeal& a) {
    if (F.is_rational()) return a;
    const auto zb = a.z_basis();
    return ideal_from_z_generators(F, {conjugate(F, zb[0]), conjugate(F, zb[1])});
}

Rational ideal_norm(const NumberField& F, const FractionalIdeal& a) {
    Rational n = Rational(a.a() * a.c());
    for (int i = 0; i < F.degree(); ++i) n *= a.scale();
    n.canonicalize();
    return n;
}

FractionalIdeal ideal_inverse(const NumberField& F, const FractionalIdeal& a) {
    // a * conj(a) = (N(a)) in a quadratic order that is maximal.
    const Rational n = ideal_norm(F, a);
    if (F.is_rational()) return ideal_from_z_generators(F, {FieldElement(Rational(1) / n)});
    const auto zb = ideal_conjugate(F, a).z_basis();
    return ideal_from_z_generators(
        F, {FieldElement(zb[0].x / n, zb[0].y / n), FieldElement(zb[1].x / n, zb[1].y / n)});
}

FractionalIdeal ideal_pow(const NumberField& F, const FractionalIdeal& a, long exponent) {
    FractionalIdeal base = exponent < 0 ? ideal_inverse(F, a) : a;
    FractionalIdeal result = unit_ideal(F);
    for (long k = 0; k < std::labs(exponent); ++k) result = ideal_mul(F, result, base);
    return result;
}

bool ideal_contains(const NumberField& F, const FractionalIdeal& a, const FieldElement& e) {
    const Rational q = Rational(1) / a.scale();
    Rational X = e.x * q;
    Rational Y = e.y * q;
    X.canonicalize();
    Y.canonicalize();
    if (X.get_den() != 1 || Y.get_den() != 1) return false;
    const Integer x = X.get_num();
    const Integer y = Y.get_num();
    if (F.is_rational()) return y == 0 && x % a.a() == 0;
    if (y % a.c() != 0) return false;
    const Integer k = y / a.c();
    return (x - k * a.b()) % a.a() == 0;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::vector<PrimeFactor> prime_above(const NumberField& F, long p) {
    if (!is_prime(p)) throw ArithcohError("prime_above: " + std::to_string(p) + " is not prime");
    if (F.is_rational()) return {{principal_ideal(F, FieldElement(p)), 1}};

    // Roots of the minimal polynomial X^2 - tX - s of w modulo p.
    const long t = ((F.w_trace() % p) + p) % p;
    const long s = ((F.w_norm_term() % p) + p) % p;
    std::vector<long> roots;
    for (long r = 0; r < p && roots.size() < 2; ++r) {
        const Integer v = (Integer(r) * r - Integer(t) * r - s) % p;
        if (v == 0) roots.push_back(r);
    }
    if (roots.empty()) return {{principal_ideal(F, FieldElement(p)), 2}};

    const auto prime_for = [&](long r) {
        return ideal_from_generators(F, {FieldElement(p), FieldElement(Rational(-r), Rational(1))});
    };
    // double root: ramified
    if (roots.size() == 1) return {{prime_for(roots[0]), 1}};
    return {{prime_for(roots[0]), 1}, {prime_for(roots[1]), 1}};
}

FractionalIdeal different_ideal(const NumberField& F) {
    if (F.is_rational()) return unit_ideal(F);
    // (w - conj(w)) = (sqrt of the discriminant)
    return principal_ideal(F, FieldElement(Rational(-F.w_trace()), Rational(2)));
}

Eigen::MatrixXd embed_ideal_basis(const NumberField& F, const FractionalIdeal& a) {
    const int n = F.degree();
    const auto zb = a.z_basis();
    Eigen::MatrixXd B(n, n);
    for (int k = 0; k < n; ++k) B.col(k) = embed(F, zb[k]);
    return B;
}

double log_abs(const Rational& q) {
    if (sgn(q) == 0) throw ArithcohError("log of zero");
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

} // namespace arithcoh
