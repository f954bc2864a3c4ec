#pragma once

#include <cstddef>

#include "arithcoh/adelic.hpp"
#include "arithcoh/lattice.hpp"

namespace arithcoh {

/// Truncated theta sum sum_{|l| <= radius} exp(-pi |l|^2) over a lattice,
/// with a rigorous bound on the omitted mass.
struct ThetaResult {
    double value = 1.0;
    double radius = 0.0;
    double tail_bound = 0.0;
    std::size_t points_used = 0;

    // Error bound carried over to log(value).
    double log_error_bound() const { return tail_bound / value; }
};

struct ThetaOptions {
    std::size_t point_cap = default_point_cap;
};

/// Upper bound for sum_l exp(-pi t |l|^2) from a packing argument: balls of
/// radius rho <= lambda_1/2 around the points are disjoint, so the sum is at
/// most the integral of exp(-pi t max(0, |x| - rho)^2) divided by vol(B_rho).
double theta_volume_bound(int dimension, double rho, double t);

ThetaResult theta_sum(const EuclideanLattice& L, double eps = 1e-12, const ThetaOptions& options = {});

// log #H^0
double h0(const AdelicBundle& b, double eps = 1e-12);
// log #H^1 counted on the dual lattice
double h1_direct(const AdelicBundle& b, double eps = 1e-12);
// h^0 of k_F (x) g^{-1}
double h1_serre(const AdelicBundle& b, double eps = 1e-12);
// h0 - h1 - deg + (r/2) log|Delta|
double rr_defect(const AdelicBundle& b, double eps = 1e-12);
// |theta_L - theta_{L*}/covol(L)| / theta_L
double poisson_defect(const EuclideanLattice& L, double eps = 1e-12);

} // namespace arithcoh
