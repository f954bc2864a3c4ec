#include "arithcoh/lattice.hpp"

#include <cmath>

namespace arithcoh {

EuclideanLattice::EuclideanLattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols() || basis_.cols() == 0)
        throw ArithcohError("lattice basis must be a nonempty square matrix");
    if (!basis_.allFinite()) throw ArithcohError("lattice basis has non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) > 0.0) || s(0) / s(s.size() - 1) > 1e14)
        throw ArithcohError("lattice basis is singular or too ill-conditioned");
}

namespace {

// Realified block of a complex scalar acting on (sqrt2 Re, sqrt2 Im).
void put_block(Eigen::MatrixXd& M, Eigen::Index row, Eigen::Index col, std::complex<double> z,
               bool complex) {
    if (!complex) {
        M(row, col) = z.real();
        return;
    }
    M(row, col) = z.real();
    M(row, col + 1) = -z.imag();
    M(row + 1, col) = z.imag();
    M(row + 1, col + 1) = z.real();
}

} // namespace

EuclideanLattice lattice_of_bundle(const AdelicBundle& b) {
    const auto& F = b.field();
    const int n = F.degree();
    const int r = b.rank();
    const int m = n * r;

    Eigen::MatrixXd mixing = Eigen::MatrixXd::Zero(m, m);
    int offset = 0;
    for (int p = 0; p < F.places(); ++p) {
        const auto& g = b.at_place(p);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
        const auto& s = svd.singularValues();
        if (s(0) / s(s.size() - 1) > 1e12)
            throw ArithcohError("mixing matrix at place " + std::to_string(p) +
                                " is near singular (condition number > 1e12)");
        const bool complex = F.place_is_complex(p);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) put_block(mixing, i * n + offset, j * n + offset, g(i, j), complex);
        offset += complex ? 2 : 1;
    }

    Eigen::MatrixXd ideals = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < r; ++i) ideals.block(i * n, i * n, n, n) = embed_ideal_basis(F, b.ideals()[i]);

    return EuclideanLattice(mixing * ideals);
}

double covolume(const EuclideanLattice& L) {
    return std::abs(L.basis().fullPivLu().determinant());
}

EuclideanLattice dual_lattice(const EuclideanLattice& L) {
    return EuclideanLattice(L.basis().inverse().transpose());
}

EuclideanLattice conjugate_complex_places(const EuclideanLattice& L, const NumberField& F, int rank) {
    Eigen::MatrixXd B = L.basis();
    const int n = F.degree();
    for (int i = 0; i < rank; ++i) {
        int offset = 0;
        for (int p = 0; p < F.places(); ++p) {
            if (F.place_is_complex(p)) {
                B.row(i * n + offset + 1) *= -1.0;
                offset += 2;
            } else {
                offset += 1;
            }
        }
    }
    return EuclideanLattice(std::move(B));
}

std::optional<IntMatrix> unimodular_transform(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                              double tol) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
    const Eigen::MatrixXd X = A.fullPivLu().solve(B);
    const Eigen::MatrixXd Xr = X.array().round().matrix();
    if ((X - Xr).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    if (std::abs(std::abs(Xr.determinant()) - 1.0) > 1e-6) return std::nullopt;
    return Xr.cast<std::int64_t>();
}

Eigen::VectorXd gram_schmidt_norms_sq(const Eigen::MatrixXd& basis) {
    // R from QR carries the Gram-Schmidt lengths on its diagonal
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    return R.diagonal().array().square().matrix();
}

LllResult lll_reduce(const EuclideanLattice& L, double delta) {
    if (!(delta > 0.25 && delta < 1.0)) throw ArithcohError("LLL delta must lie in (0.25, 1)");
    Eigen::MatrixXd B = L.basis();
    IntMatrix U;
    lll_in_place<double>(B, U, delta);
    // rebuild from the exact transform so the result stays on the lattice
    Eigen::MatrixXd reduced = L.basis() * U.cast<double>();
    return {EuclideanLattice(std::move(reduced)), std::move(U)};
}

bool is_lll_reduced(const Eigen::MatrixXd& basis, double delta, double tol) {
    const Eigen::Index m = basis.cols();
    Eigen::MatrixXd bstar(basis.rows(), m);
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd bn(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        bstar.col(i) = basis.col(i);
        for (Eigen::Index j = 0; j < i; ++j) {
            mu(i, j) = basis.col(i).dot(bstar.col(j)) / bn(j);
            bstar.col(i) -= mu(i, j) * bstar.col(j);
            if (std::abs(mu(i, j)) > 0.5 + tol) return false;
        }
        bn(i) = bstar.col(i).squaredNorm();
    }
    for (Eigen::Index k = 1; k < m; ++k)
        if (bn(k) < (delta - mu(k, k - 1) * mu(k, k - 1)) * bn(k - 1) * (1.0 - tol)) return false;
    return true;
}

std::vector<LatticePoint> enumerate_points(const EuclideanLattice& L, double radius, std::size_t cap) {
    if (!(radius >= 0.0)) throw ArithcohError("enumeration radius must be nonnegative");
    const auto red = lll_reduce(L);
    const Eigen::MatrixXd& B = red.lattice.basis();
    const double r2 = radius * radius;
    const double keep = r2 + 1e-12 * std::max(1.0, r2);
    std::vector<LatticePoint> out;
    enumerate_ball(
        B, r2,
        [&](std::span<const std::int64_t> x, double) {
            IntVector xr(static_cast<Eigen::Index>(x.size()));
            for (std::size_t i = 0; i < x.size(); ++i) xr(static_cast<Eigen::Index>(i)) = x[i];
            Eigen::VectorXd v = B * xr.cast<double>();
            const double ns = v.squaredNorm();
            if (ns > keep) return;
            out.push_back({red.transform * xr, std::move(v), ns});
        },
        cap);
    return out;
}

} // namespace arithcoh
