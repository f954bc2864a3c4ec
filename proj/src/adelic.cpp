#include "arithcoh/adelic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace arithcoh {

namespace {

Eigen::MatrixXcd identity(int r) { return Eigen::MatrixXcd::Identity(r, r); }

// Inverse transpose. Complex places pair through the trace form without
// conjugation, so no conjugate is taken there either.
Eigen::MatrixXcd inverse_transpose(const Eigen::MatrixXcd& g) {
    return g.inverse().transpose();
}

double condition_number(const Eigen::MatrixXcd& g) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const auto& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

} // namespace

AdelicBundle::AdelicBundle(NumberField field, std::vector<FractionalIdeal> ideals,
                           std::vector<Eigen::MatrixXcd> infinite)
    : field_(std::move(field)), ideals_(std::move(ideals)), infinite_(std::move(infinite)) {
    const int r = rank();
    if (r < 1) throw ArithcohError("bundle rank must be at least 1");
    if (static_cast<int>(infinite_.size()) != field_.places())
        throw ArithcohError("bundle needs one infinite matrix per archimedean place (" +
                            std::to_string(field_.places()) + "), got " +
                            std::to_string(infinite_.size()));
    for (int p = 0; p < field_.places(); ++p) {
        auto& g = infinite_[p];
        if (g.rows() != r || g.cols() != r)
            throw ArithcohError("infinite matrix at place " + std::to_string(p) +
                                " has wrong shape for rank " + std::to_string(r));
        if (!field_.place_is_complex(p)) {
            if (g.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
                throw ArithcohError("infinite matrix at real place " + std::to_string(p) +
                                    " is not real");
            g = g.real().cast<std::complex<double>>();
        }
        const double det = std::abs(g.determinant());
        if (!(det > 0.0) || !std::isfinite(det))
            throw ArithcohError("infinite matrix at place " + std::to_string(p) +
                                " is not invertible");
    }
}

bool operator==(const AdelicBundle& a, const AdelicBundle& b) {
    if (!(a.field_ == b.field_) || a.ideals_ != b.ideals_) return false;
    for (std::size_t p = 0; p < a.infinite_.size(); ++p)
        if (a.infinite_[p] != b.infinite_[p]) return false;
    return true;
}

AdelicBundle trivial_bundle(const NumberField& F, int rank) {
    return AdelicBundle(F, std::vector<FractionalIdeal>(rank, unit_ideal(F)),
                        std::vector<Eigen::MatrixXcd>(F.places(), identity(rank)));
}

AdelicBundle canonical_bundle(const NumberField& F) {
    return AdelicBundle(F, {ideal_inverse(F, different_ideal(F))},
                        std::vector<Eigen::MatrixXcd>(F.places(), identity(1)));
}

double degree(const AdelicBundle& b) {
    const auto& F = b.field();
    double deg = 0.0;
    for (const auto& a : b.ideals()) deg -= log_abs(ideal_norm(F, a));
    for (int p = 0; p < F.places(); ++p)
        deg -= F.place_weight(p) * std::log(std::abs(b.at_place(p).determinant()));
    return deg;
}

AdelicBundle dual_bundle(const AdelicBundle& b) {
    const auto& F = b.field();
    std::vector<FractionalIdeal> ideals;
    for (const auto& a : b.ideals()) ideals.push_back(ideal_inverse(F, a));
    std::vector<Eigen::MatrixXcd> inf;
    for (const auto& g : b.infinite()) inf.push_back(inverse_transpose(g));
    return AdelicBundle(F, std::move(ideals), std::move(inf));
}

AdelicBundle tensor_line(const AdelicBundle& b, const AdelicBundle& line) {
    if (!(b.field() == line.field())) throw ArithcohError("tensor_line: field mismatch");
    if (line.rank() != 1) throw ArithcohError("tensor_line: second argument must have rank 1");
    const auto& F = b.field();
    std::vector<FractionalIdeal> ideals;
    for (const auto& a : b.ideals()) ideals.push_back(ideal_mul(F, a, line.ideals()[0]));
    std::vector<Eigen::MatrixXcd> inf;
    for (int p = 0; p < F.places(); ++p) inf.push_back(b.at_place(p) * line.at_place(p)(0, 0));
    return AdelicBundle(F, std::move(ideals), std::move(inf));
}

AdelicBundle serre_dual(const AdelicBundle& b) {
    return tensor_line(dual_bundle(b), canonical_bundle(b.field()));
}

AdelicBundle direct_sum(const AdelicBundle& a, const AdelicBundle& b) {
    if (!(a.field() == b.field())) throw ArithcohError("direct_sum: field mismatch");
    std::vector<FractionalIdeal> ideals = a.ideals();
    ideals.insert(ideals.end(), b.ideals().begin(), b.ideals().end());
    const int ra = a.rank(), rb = b.rank();
    std::vector<Eigen::MatrixXcd> inf;
    for (int p = 0; p < a.field().places(); ++p) {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(ra + rb, ra + rb);
        g.topLeftCorner(ra, ra) = a.at_place(p);
        g.bottomRightCorner(rb, rb) = b.at_place(p);
        inf.push_back(std::move(g));
    }
    return AdelicBundle(a.field(), std::move(ideals), std::move(inf));
}

AdelicBundle scale_infinite(const AdelicBundle& b, double log_scale) {
    std::vector<Eigen::MatrixXcd> inf;
    const double s = std::exp(log_scale);
    for (const auto& g : b.infinite()) inf.push_back(g * s);
    return AdelicBundle(b.field(), b.ideals(), std::move(inf));
}

AdelicBundle principal_twist(const AdelicBundle& b, const FieldElement& f) {
    if (f.is_zero()) throw ArithcohError("principal_twist: zero element");
    const auto& F = b.field();
    const auto fideal = principal_ideal(F, f);
    std::vector<FractionalIdeal> ideals;
    for (const auto& a : b.ideals()) ideals.push_back(ideal_mul(F, fideal, a));
    std::vector<Eigen::MatrixXcd> inf;
    for (int p = 0; p < F.places(); ++p) {
        const auto sf = embed_at(F, f, p);
        inf.push_back(b.at_place(p) / sf);
    }
    return AdelicBundle(F, std::move(ideals), std::move(inf));
}

bool is_global_section(const AdelicBundle& b, const std::vector<FieldElement>& f) {
    if (static_cast<int>(f.size()) != b.rank())
        throw ArithcohError("is_global_section: expected " + std::to_string(b.rank()) +
                            " components, got " + std::to_string(f.size()));
    for (int i = 0; i < b.rank(); ++i)
        if (!ideal_contains(b.field(), b.ideals()[i], f[i])) return false;
    return true;
}

AdelicBundle random_bundle(const NumberField& F, int rank, double deg_lo, double deg_hi,
                           std::uint64_t seed, const RandomBundleOptions& options) {
    if (!(std::isfinite(deg_lo) && std::isfinite(deg_hi)) || deg_lo > deg_hi)
        throw ArithcohError("random_bundle: degree range must be finite and ordered");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> factor_count(0, options.max_prime_factors);
    std::uniform_int_distribution<std::size_t> prime_index(0, options.primes.size() - 1);
    std::uniform_int_distribution<long> exponent(-3, 3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    std::vector<FractionalIdeal> ideals;
    for (int i = 0; i < rank; ++i) {
        FractionalIdeal a = unit_ideal(F);
        const int k = options.primes.empty() ? 0 : factor_count(rng);
        for (int j = 0; j < k; ++j) {
            const auto primes = prime_above(F, options.primes[prime_index(rng)]);
            std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
            const auto& P = primes[pick(rng)].ideal;
            a = ideal_mul(F, a, ideal_pow(F, P, exponent(rng)));
        }
        ideals.push_back(std::move(a));
    }

    // Each summand's scalar offsets its own ideal norm, so no summand drifts far from deg/r.
    std::vector<double> offset;
    for (const auto& a : ideals) offset.push_back(-log_abs(ideal_norm(F, a)) / F.degree());

    std::vector<Eigen::MatrixXcd> inf;
    for (int p = 0; p < F.places(); ++p) {
        const bool complex = F.place_is_complex(p);
        const auto entry = [&](double scale) {
            return complex ? std::complex<double>(scale * unit(rng), scale * unit(rng))
                           : std::complex<double>(scale * unit(rng), 0.0);
        };
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rank, rank);
        for (int i = 0; i < rank; ++i) {
            const double phase = complex ? angle(rng) : 0.0;
            d(i, i) = std::polar(std::exp(unit(rng) + offset[i]), phase);
        }
        if (options.mixing) {
            Eigen::MatrixXcd m(rank, rank);
            do {
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < rank; ++j) m(i, j) = (i == j ? 1.0 : 0.0) + entry(0.5);
            } while (condition_number(m) > 1e3);
            d = m * d;
        }
        inf.push_back(std::move(d));
    }

    AdelicBundle draft(F, ideals, inf);
    const double target = std::uniform_real_distribution<double>(deg_lo, deg_hi)(rng);
    const double shift = (degree(draft) - target) / (rank * F.degree());
    return scale_infinite(draft, shift);
}

} // namespace arithcoh
