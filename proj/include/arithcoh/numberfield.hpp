#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Dense>

namespace arithcoh {

using Integer = mpz_class;
using Rational = mpq_class;

class ArithcohError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FieldKind { rational, quadratic };

// Q or Q(sqrt d). The integral basis is {1, w} with w^2 = trace_w * w + norm_term,
// i.e. w = sqrt d for d = 2,3 mod 4 and w = (1 + sqrt d)/2 for d = 1 mod 4.
class NumberField {
public:
    static NumberField rational();
    static NumberField quadratic(long d);

    FieldKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FieldKind::rational; }
    long d() const { return d_; }
    const Integer& discriminant() const { return disc_; }
    int real_places() const { return r1_; }
    int complex_places() const { return r2_; }
    int places() const { return r1_ + r2_; }
    int degree() const { return r1_ + 2 * r2_; }

    // Places are ordered real ones first. Quadratic real fields: place 0 sends
    // sqrt d to +sqrt d, place 1 to -sqrt d. Imaginary fields: sqrt d -> i sqrt|d|.
    bool place_is_complex(int place) const { return place >= r1_; }
    // 1 for real places, 2 for complex ones (normalized absolute value exponent).
    int place_weight(int place) const { return place_is_complex(place) ? 2 : 1; }

    // Coefficients of the minimal polynomial of w: w^2 = w_trace*w + w_norm_term.
    long w_trace() const { return w_trace_; }
    long w_norm_term() const { return w_norm_term_; }

    std::string label() const;

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.kind_ == b.kind_ && a.d_ == b.d_;
    }

private:
    NumberField() = default;

    FieldKind kind_ = FieldKind::rational;
    long d_ = 1;
    Integer disc_ = 1;
    int r1_ = 1;
    int r2_ = 0;
    long w_trace_ = 0;
    long w_norm_term_ = 0;
};

NumberField make_field(FieldKind kind, long d = 0);

// x + y*w. y is zero over Q.
struct FieldElement {
    Rational x = 0;
    Rational y = 0;

    FieldElement() = default;
    FieldElement(Rational x_, Rational y_ = 0) : x(std::move(x_)), y(std::move(y_)) {
        x.canonicalize();
        y.canonicalize();
    }
    FieldElement(long v) : x(v), y(0) {}

    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.x == b.x && a.y == b.y;
    }
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const NumberField& F, const FieldElement& a, const FieldElement& b);
FieldElement conjugate(const NumberField& F, const FieldElement& a);
FieldElement inverse(const NumberField& F, const FieldElement& a);

struct NormTrace {
    Rational norm;
    Rational trace;
};
NormTrace norm_trace(const NumberField& F, const FieldElement& e);

// Real coordinates of e in the archimedean space. Complex places contribute
// (sqrt2 Re, sqrt2 Im) so that the quadratic form is the standard one.
Eigen::VectorXd embed(const NumberField& F, const FieldElement& e);

// Value of the embedding at a single place (imaginary part zero at real places).
std::complex<double> embed_at(const NumberField& F, const FieldElement& e, int place);

/// A fractional ideal scale * (Z*a + Z*(b + c*w)).
///
/// Canonical form: scale = 1/q where q is the least positive integer with
/// q*I integral, and (a, b, c) the column HNF of q*I with 0 <= b < a. Over Q
/// only `a` is meaningful (b = 0, c = 1). Two ideals are equal iff all four
/// fields agree.
class FractionalIdeal {
public:
    const Rational& scale() const { return scale_; }
    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }

    // Z-basis of the ideal as field elements.
    std::array<FieldElement, 2> z_basis() const;

    friend bool operator==(const FractionalIdeal& l, const FractionalIdeal& r) {
        return l.scale_ == r.scale_ && l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_;
    }

    std::string to_string() const;

private:
    friend FractionalIdeal ideal_from_z_generators(const NumberField&,
                                                   const std::vector<FieldElement>&);
    Rational scale_ = 1;
    Integer a_ = 1, b_ = 0, c_ = 1;
};

// Z-module spanned by the given elements. The caller is responsible for the
// span being an O_F-module.
FractionalIdeal ideal_from_z_generators(const NumberField& F, const std::vector<FieldElement>& gens);
// O_F-module generated by the given elements.
FractionalIdeal ideal_from_generators(const NumberField& F, const std::vector<FieldElement>& gens);
FractionalIdeal unit_ideal(const NumberField& F);
FractionalIdeal principal_ideal(const NumberField& F, const FieldElement& e);

FractionalIdeal ideal_mul(const NumberField& F, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_inverse(const NumberField& F, const FractionalIdeal& a);
FractionalIdeal ideal_pow(const NumberField& F, const FractionalIdeal& a, long exponent);
FractionalIdeal ideal_conjugate(const NumberField& F, const FractionalIdeal& a);
Rational ideal_norm(const NumberField& F, const FractionalIdeal& a);
bool ideal_contains(const NumberField& F, const FractionalIdeal& a, const FieldElement& e);

struct PrimeFactor {
    FractionalIdeal ideal;
    int residue_degree;
};

// Primes of O_F above the rational prime p. Throws for composite p.
std::vector<PrimeFactor> prime_above(const NumberField& F, long p);

FractionalIdeal different_ideal(const NumberField& F);

// Embedded Z-basis of the ideal as columns of an n x n matrix.
Eigen::MatrixXd embed_ideal_basis(const NumberField& F, const FractionalIdeal& a);

// log |q| for a nonzero rational, robust for huge numerators/denominators.
double log_abs(const Rational& q);

bool is_prime(long p);

} // namespace arithcoh
