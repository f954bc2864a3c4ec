#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arithcoh/adelic.hpp"
#include "arithcoh/numberfield.hpp"

namespace arithcoh {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

class PointCapExceeded : public ArithcohError {
public:
    explicit PointCapExceeded(std::size_t cap)
        : ArithcohError("lattice enumeration exceeded the point cap of " + std::to_string(cap)),
          cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

inline constexpr std::size_t default_point_cap = 100'000'000;

// Full-rank lattice in R^m; basis vectors are the columns.
class EuclideanLattice {
public:
    explicit EuclideanLattice(Eigen::MatrixXd basis);

    int dimension() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }
    Eigen::MatrixXd gram() const { return basis_.transpose() * basis_; }

private:
    Eigen::MatrixXd basis_;
};

/// Image of H^0(F, g) in the archimedean space: {g_inf (sigma(f_i))_i : f_i in a_i}.
/// Coordinates are grouped by component, then by place (complex places as
/// realified pairs with the sqrt2 factor). Throws when a mixing matrix has
/// condition number above 1e12.
EuclideanLattice lattice_of_bundle(const AdelicBundle& b);

double covolume(const EuclideanLattice& L);

// Inverse-transpose basis: duality for the standard inner product.
EuclideanLattice dual_lattice(const EuclideanLattice& L);

// Complex conjugation at every complex place (negate the imaginary coordinates).
EuclideanLattice conjugate_complex_places(const EuclideanLattice& L, const NumberField& F, int rank);

// Integer U with B = A U and |det U| = 1, if A and B span the same lattice
// (entries of A^{-1}B within tol of integers).
std::optional<IntMatrix> unimodular_transform(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                              double tol = 1e-9);

// ---------------------------------------------------------------------------
// LLL

/// Textbook LLL on the columns of `basis`, in place. `transform` receives the
/// unimodular U with reduced = original * U.
template <typename Scalar>
void lll_in_place(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& basis, IntMatrix& transform,
                  Scalar delta) {
    using std::abs;
    using std::round;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const Eigen::Index m = basis.cols();
    transform = IntMatrix::Identity(m, m);
    if (m < 2) return;

    Mat mu = Mat::Zero(m, m);
    Vec bnorm(m);
    Mat bstar(basis.rows(), m);
    const auto gso = [&] {
        for (Eigen::Index i = 0; i < m; ++i) {
            bstar.col(i) = basis.col(i);
            for (Eigen::Index j = 0; j < i; ++j) {
                mu(i, j) = basis.col(i).dot(bstar.col(j)) / bnorm(j);
                bstar.col(i) -= mu(i, j) * bstar.col(j);
            }
            bnorm(i) = bstar.col(i).squaredNorm();
        }
    };
    gso();

    Eigen::Index k = 1;
    std::size_t iterations = 0;
    while (k < m) {
        if (++iterations > 1'000'000) throw ArithcohError("LLL did not terminate");
        for (int pass = 0; pass < 4; ++pass) {
            bool changed = false;
            for (Eigen::Index j = k - 1; j >= 0; --j) {
                const Scalar q = round(mu(k, j));
                if (q == Scalar(0)) continue;
                changed = true;
                basis.col(k) -= q * basis.col(j);
                transform.col(k) -= static_cast<std::int64_t>(q) * transform.col(j);
                for (Eigen::Index i = 0; i < j; ++i) mu(k, i) -= q * mu(j, i);
                mu(k, j) -= q;
            }
            if (!changed) break;
            // refresh row k to shed accumulated rounding
            for (Eigen::Index j = 0; j < k; ++j) mu(k, j) = basis.col(k).dot(bstar.col(j)) / bnorm(j);
        }
        if (bnorm(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bnorm(k - 1)) {
            ++k;
        } else {
            basis.col(k).swap(basis.col(k - 1));
            transform.col(k).swap(transform.col(k - 1));
            gso();
            k = std::max<Eigen::Index>(k - 1, 1);
        }
    }
}

struct LllResult {
    EuclideanLattice lattice;
    IntMatrix transform;
};

LllResult lll_reduce(const EuclideanLattice& L, double delta = 0.99);

// Size reduction (|mu| <= 1/2 + tol) and the Lovasz condition.
bool is_lll_reduced(const Eigen::MatrixXd& basis, double delta, double tol = 1e-9);

// Squared Gram-Schmidt norms of the columns.
Eigen::VectorXd gram_schmidt_norms_sq(const Eigen::MatrixXd& basis);

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration

/// Visits every coefficient vector x with ||basis * x||^2 <= radius_sq (plus a
/// 1e-10 relative slack). `visit(std::span<const std::int64_t> x, double norm_sq)`.
/// The basis should already be reduced; no reduction happens here.
/// Returns the number of visited points.
template <typename Visitor>
std::size_t enumerate_ball(const Eigen::MatrixXd& basis, double radius_sq, Visitor&& visit,
                           std::size_t cap = default_point_cap) {
    const int m = static_cast<int>(basis.cols());
    const Eigen::MatrixXd gram = basis.transpose() * basis;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw ArithcohError("enumeration: Gram matrix not positive definite");
    const Eigen::MatrixXd R = llt.matrixU();

    std::vector<double> q(m);
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        q[i] = R(i, i) * R(i, i);
        for (int j = i + 1; j < m; ++j) mu(i, j) = R(i, j) / R(i, i);
    }

    const double bound = radius_sq * (1.0 + 1e-10);
    std::vector<std::int64_t> x(m, 0);
    std::size_t count = 0;

    struct Walker {
        const int m;
        const std::vector<double>& q;
        const Eigen::MatrixXd& mu;
        std::vector<std::int64_t>& x;
        std::size_t& count;
        std::size_t cap;
        Visitor& visit;

        void level(int i, double used, double budget) {
            double center = 0.0;
            for (int j = i + 1; j < m; ++j) center -= mu(i, j) * static_cast<double>(x[j]);
            const double rem = budget - used;
            if (rem < 0.0) return;
            const double w = std::sqrt(rem / q[i]);
            const auto lo = static_cast<std::int64_t>(std::ceil(center - w));
            const auto hi = static_cast<std::int64_t>(std::floor(center + w));
            for (std::int64_t v = lo; v <= hi; ++v) {
                const double d = static_cast<double>(v) - center;
                const double here = used + q[i] * d * d;
                if (here > budget) continue;
                x[i] = v;
                if (i == 0) {
                    if (++count > cap) throw PointCapExceeded(cap);
                    visit(std::span<const std::int64_t>(x.data(), x.size()), here);
                } else {
                    level(i - 1, here, budget);
                }
            }
            x[i] = 0;
        }
    };
    Walker walker{m, q, mu, x, count, cap, visit};
    if (m > 0) walker.level(m - 1, 0.0, bound);
    return count;
}

struct LatticePoint {
    IntVector coefficients;  // w.r.t. the lattice's own basis
    Eigen::VectorXd vector;
    double norm_sq;
};

// All points with norm at most `radius`, origin included, each once.
std::vector<LatticePoint> enumerate_points(const EuclideanLattice& L, double radius,
                                           std::size_t cap = default_point_cap);

} // namespace arithcoh
