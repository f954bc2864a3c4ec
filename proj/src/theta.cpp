#include "arithcoh/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace arithcoh {

namespace {

constexpr double pi = std::numbers::pi;

// Neumaier summation; the enumeration order is deterministic so the result is too.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

double theta_volume_bound(int dimension, double rho, double t) {
    const int m = dimension;
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        const double half = 0.5 * (k + 1);
        acc += binomial(m - 1, k) * std::pow(rho, -1.0 - k) * std::tgamma(half) /
               (2.0 * std::pow(pi * t, half));
    }
    return 1.0 + m * acc;
}

ThetaResult theta_sum(const EuclideanLattice& L, double eps, const ThetaOptions& options) {
    if (!(eps > 0.0)) throw ArithcohError("theta_sum: eps must be positive");
    const auto reduced = lll_reduce(L);
    const Eigen::MatrixXd& B = reduced.lattice.basis();
    const int m = L.dimension();

    // lambda_1 >= min_i |b_i*| for any basis
    const double rho = 0.5 * std::sqrt(gram_schmidt_norms_sq(B).minCoeff());
    const double quarter_bound = theta_volume_bound(m, rho, 0.25);

    // Gaussian heuristic for theta at 1/2 to seed the radius.
    const double guess = 1.0 + std::pow(2.0, 0.5 * m) / covolume(L);
    double r2 = std::max(0.0, (2.0 / pi) * std::log(guess / eps));

    for (int attempt = 0; attempt < 64; ++attempt) {
        CompensatedSum full, half;
        std::size_t count = 0;
        try {
            count = enumerate_ball(
                B, r2,
                [&](std::span<const std::int64_t>, double norm_sq) {
                    full.add(std::exp(-pi * norm_sq));
                    half.add(std::exp(-0.5 * pi * norm_sq));
                },
                options.point_cap);
        } catch (const PointCapExceeded& e) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "theta_sum: eps = %.3g is unreachable under the point cap of %zu (radius %.4g)",
                          eps, static_cast<std::size_t>(e.cap()), std::sqrt(r2));
            throw ArithcohError(msg);
        }

        // theta(1/2) <= partial(1/2) + exp(-pi R^2/4) theta(1/4)
        const double half_bound = half.value() + std::exp(-0.25 * pi * r2) * quarter_bound;
        const double tail = std::exp(-0.5 * pi * r2) * half_bound;
        if (tail <= eps) {
            return ThetaResult{full.value(), std::sqrt(r2), tail, count};
        }
        const double need_half = (2.0 / pi) * std::log(2.0 * half_bound / eps);
        const double need_quarter = (4.0 / (3.0 * pi)) * std::log(2.0 * quarter_bound / eps);
        r2 = std::max({need_half, need_quarter, r2 * 1.05 + 0.1});
    }
    throw ArithcohError("theta_sum: tail bound did not converge");
}

double h0(const AdelicBundle& b, double eps) {
    return std::log(theta_sum(lattice_of_bundle(b), eps).value);
}

double h1_direct(const AdelicBundle& b, double eps) {
    return std::log(theta_sum(dual_lattice(lattice_of_bundle(b)), eps).value);
}

double h1_serre(const AdelicBundle& b, double eps) { return h0(serre_dual(b), eps); }

double rr_defect(const AdelicBundle& b, double eps) {
    const double log_disc = std::log(std::abs(b.field().discriminant().get_d()));
    return h0(b, eps) - h1_direct(b, eps) - degree(b) + 0.5 * b.rank() * log_disc;
}

double poisson_defect(const EuclideanLattice& L, double eps) {
    const double direct = theta_sum(L, eps).value;
    const double dual = theta_sum(dual_lattice(L), eps).value;
    return std::abs(direct - dual / covolume(L)) / direct;
}

} // namespace arithcoh
