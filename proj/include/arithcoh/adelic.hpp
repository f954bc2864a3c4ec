#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "arithcoh/numberfield.hpp"

namespace arithcoh {

/// A rank r bundle g = (g_v; g_sigma) over F.
///
/// The finite part is diagonal: component i is the fractional ideal whose
/// local orders are those of g_{i,v}. The infinite part holds one invertible
/// r x r matrix per archimedean place, complex valued; matrices at real places
/// must have zero imaginary part.
///
/// The sections H^0 are {(f_i) : f_i in a_i}, embedded as g_sigma * (sigma(f_i))_i.
class AdelicBundle {
public:
    AdelicBundle(NumberField field, std::vector<FractionalIdeal> ideals,
                 std::vector<Eigen::MatrixXcd> infinite);

    const NumberField& field() const { return field_; }
    int rank() const { return static_cast<int>(ideals_.size()); }
    const std::vector<FractionalIdeal>& ideals() const { return ideals_; }
    const std::vector<Eigen::MatrixXcd>& infinite() const { return infinite_; }
    const Eigen::MatrixXcd& at_place(int place) const { return infinite_[place]; }

    friend bool operator==(const AdelicBundle& a, const AdelicBundle& b);

private:
    NumberField field_;
    std::vector<FractionalIdeal> ideals_;
    std::vector<Eigen::MatrixXcd> infinite_;
};

AdelicBundle trivial_bundle(const NumberField& F, int rank);

// Ideal part delta^{-1}, identity at infinity.
AdelicBundle canonical_bundle(const NumberField& F);

// deg = -sum_i log N(a_i) - sum_sigma log ||det g_sigma||_sigma, where
// ||x|| is |x| at real places and |x|^2 at complex ones.
double degree(const AdelicBundle& b);

// g -> g^{-1}: inverse ideals, inverse-transpose matrices.
AdelicBundle dual_bundle(const AdelicBundle& b);

AdelicBundle tensor_line(const AdelicBundle& b, const AdelicBundle& line);

// k_F (x) g^{-1}
AdelicBundle serre_dual(const AdelicBundle& b);

// Direct sum of bundles over the same field; infinite parts block diagonal.
AdelicBundle direct_sum(const AdelicBundle& a, const AdelicBundle& b);

// Multiply every g_sigma by exp(log_scale); deg drops by n * r * log_scale.
AdelicBundle scale_infinite(const AdelicBundle& b, double log_scale);

// Replace a by (f) a and g_sigma by sigma(f)^{-1} g_sigma. Leaves H^0 and deg
// unchanged (product formula).
AdelicBundle principal_twist(const AdelicBundle& b, const FieldElement& f);

bool is_global_section(const AdelicBundle& b, const std::vector<FieldElement>& f);

struct RandomBundleOptions {
    // Give every place a random well-conditioned mixing matrix instead of a
    // diagonal one.
    bool mixing = false;
    // Rational primes whose prime ideals may occur in the finite part.
    std::vector<long> primes{2, 3, 5, 7, 11, 13};
    int max_prime_factors = 2;
};

AdelicBundle random_bundle(const NumberField& F, int rank, double deg_lo, double deg_hi,
                           std::uint64_t seed, const RandomBundleOptions& options = {});

} // namespace arithcoh
