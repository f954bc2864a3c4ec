#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arithcoh/theta.hpp"
#include "oracles.hpp"

using namespace arithcoh;

namespace {

constexpr double pi = std::numbers::pi;

EuclideanLattice scaled_integers(double t) { return EuclideanLattice(Eigen::MatrixXd::Constant(1, 1, t)); }

// Rank one bundle over Q whose lattice is tZ.
AdelicBundle q_line(double t) {
    const auto Q = NumberField::rational();
    return AdelicBundle(Q, {unit_ideal(Q)}, {Eigen::MatrixXcd::Constant(1, 1, t)});
}

double log_disc(const NumberField& F) { return std::log(std::abs(F.discriminant().get_d())); }

// Trivial line twisted at infinity to the requested degree.
AdelicBundle line_of_degree(const NumberField& F, double deg) {
    return scale_infinite(trivial_bundle(F, 1), -deg / F.degree());
}

RandomBundleOptions with_mixing() {
    RandomBundleOptions o;
    o.mixing = true;
    return o;
}

} // namespace

TEST_CASE("theta of scaled integer lattices against direct summation") {
    const double theta_z = oracle::theta_scaled_integers(1.0, 6);
    CHECK(theta_z == doctest::Approx(1.086434811213308).epsilon(1e-15));
    const auto t = theta_sum(scaled_integers(1.0));
    CHECK(std::abs(t.value - theta_z) < 1e-12);
    CHECK(t.tail_bound <= 1e-12);
    CHECK(t.value >= 1.0);

    const double theta_2z = oracle::theta_scaled_integers(2.0, 6);
    CHECK(std::abs(theta_sum(scaled_integers(2.0)).value - theta_2z) < 1e-12);
    CHECK(theta_2z == doctest::Approx(1.0000069746847124).epsilon(1e-15));

    // Jacobi: theta(Z/2) = 2 theta(2Z)
    const double theta_half = theta_sum(scaled_integers(0.5)).value;
    CHECK(std::abs(theta_half - 2.0 * theta_2z) < 1e-12);
    CHECK(std::abs(theta_half - oracle::theta_scaled_integers(0.5, 40)) < 1e-12);
}

TEST_CASE("theta argument checks") {
    CHECK_THROWS_AS(theta_sum(scaled_integers(1.0), 0.0), ArithcohError);
    ThetaOptions tiny;
    tiny.point_cap = 10;
    CHECK_THROWS_WITH_AS(theta_sum(scaled_integers(0.01), 1e-12, tiny), doctest::Contains("point cap"),
                         ArithcohError);
}

TEST_CASE("volume bound dominates the true theta") {
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 6; ++k) {
            const auto L = lattice_of_bundle(random_bundle(F, 1 + k % 2, -3, 3, 60 + k));
            const auto red = lll_reduce(L);
            const double rho = 0.5 * std::sqrt(gram_schmidt_norms_sq(red.lattice.basis()).minCoeff());
            for (double t : {0.25, 0.5, 1.0}) {
                // theta(t) of L is theta(1) of sqrt(t) L
                const double exact = theta_sum(EuclideanLattice(std::sqrt(t) * L.basis()), 1e-13).value;
                CHECK(theta_volume_bound(L.dimension(), rho, t) >= exact);
            }
        }
}

TEST_CASE("h0 golden values") {
    const auto Q = NumberField::rational();
    const double h = h0(trivial_bundle(Q, 1));
    CHECK(std::abs(h - std::log(oracle::theta_scaled_integers(1.0, 6))) < 1e-12);
    CHECK(h == doctest::Approx(0.08290152003105467).epsilon(1e-12));

    // (1/100)Z: theta ~ 100 by Jacobi, deg = log 100
    const auto dense = q_line(0.01);
    CHECK(degree(dense) == doctest::Approx(std::log(100.0)));
    CHECK(std::abs(h0(dense) - std::log(100.0)) < 1e-9);

    const auto sparse = q_line(100.0);
    const double hs = h0(sparse);
    CHECK(hs >= 0.0);
    CHECK(hs < 1e-12);
}

TEST_CASE("h1 by the dual lattice") {
    const auto Q = NumberField::rational();
    CHECK(std::abs(h1_direct(trivial_bundle(Q, 1)) - 0.08290152003105467) < 1e-12);
    CHECK(h1_direct(q_line(0.01)) < 1e-12);

    int n = 0;
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 20; ++k, ++n) {
            const auto b = random_bundle(F, 1 + k % 2, -6, 6, 1000 + k, k % 5 == 3 ? with_mixing() : RandomBundleOptions{});
            const double covol = covolume(lattice_of_bundle(b));
            const double lhs = std::exp(h1_direct(b));
            const double rhs = covol * std::exp(h0(b));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
        }
    CHECK(n == 100);
}

TEST_CASE("h1 by Serre duality") {
    const auto Q = NumberField::rational();
    CHECK(std::abs(h1_serre(trivial_bundle(Q, 1)) - 0.08290152003105467) < 1e-12);

    const auto Qi = NumberField::quadratic(-1);
    const auto t = trivial_bundle(Qi, 1);
    CHECK(std::abs(h1_serre(t) - h0(canonical_bundle(Qi))) < 1e-14);
    CHECK(std::abs(h1_serre(t) - h1_direct(t)) < 1e-8);

    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 8; ++k) {
            const auto b = random_bundle(F, 1 + k % 2, -8, 8, 1400 + k, k % 2 ? with_mixing() : RandomBundleOptions{});
            CHECK(std::abs(h1_serre(b) - h1_direct(b)) < 1e-8);
            // counting axiom: the H^0 count of b is the H^1 count of its Serre dual
            CHECK(std::abs(h0(b) - h1_direct(serre_dual(b))) < 1e-8);
        }
}

TEST_CASE("Riemann-Roch defect") {
    const auto Q = NumberField::rational();
    CHECK(std::abs(rr_defect(trivial_bundle(Q, 1))) < 1e-10);

    const auto F = NumberField::quadratic(-5);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(rr_defect(random_bundle(F, 1, -10, 10, 2000 + k))) < 1e-8);

    const auto Qi = NumberField::quadratic(-1);
    for (int k = 0; k < 4; ++k) {
        const auto b = direct_sum(random_bundle(Qi, 1, -3, 3, 2100 + k), random_bundle(Qi, 1, -3, 3, 2200 + k));
        CHECK(b.rank() == 2);
        CHECK(std::abs(rr_defect(b)) < 1e-8);
    }
}

TEST_CASE("Poisson defect") {
    CHECK(poisson_defect(scaled_integers(1.0)) < 1e-12);
    CHECK(poisson_defect(scaled_integers(2.0)) < 1e-12);
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 6; ++k) {
            const auto L = lattice_of_bundle(random_bundle(F, 1 + k % 2, -5, 5, 2300 + k));
            CHECK(poisson_defect(L) < 1e-10);
        }
}

TEST_CASE("reported tail bounds are honest") {
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 6; ++k) {
            const auto L = lattice_of_bundle(random_bundle(F, 1 + k % 2, -6, 6, 2400 + k));
            const auto coarse = theta_sum(L, 1e-6);
            const auto fine = theta_sum(L, 1e-8);
            CHECK(coarse.tail_bound <= 1e-6);
            CHECK(fine.value - coarse.value >= -1e-13);
            CHECK(fine.value - coarse.value <= coarse.tail_bound);
            CHECK(fine.points_used >= coarse.points_used);
        }
}

TEST_CASE("h0 is monotone under ideal inclusion") {
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 5; ++k) {
            const auto b = random_bundle(F, 1, -4, 6, 2500 + k);
            const auto P = prime_above(F, 3)[0].ideal;
            // a = P * b is contained in b
            const AdelicBundle smaller(F, {ideal_mul(F, P, b.ideals()[0])}, b.infinite());
            CHECK(h0(smaller) <= h0(b) + 1e-12);
        }
}

TEST_CASE("h0 and h1 are nonnegative") {
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 5; ++k) {
            const auto b = random_bundle(F, 1, -10, 10, 2600 + k);
            CHECK(h0(b) >= 0.0);
            CHECK(h1_direct(b) >= 0.0);
        }
}

TEST_CASE("asymptotics at large |deg|") {
    for (const auto& F : oracle::suite_fields()) {
        const auto high = line_of_degree(F, 10.0);
        CHECK(std::abs(h0(high) - 10.0 + 0.5 * log_disc(F)) < 1e-6);
        CHECK(h0(line_of_degree(F, -10.0)) < 1e-6);
    }
}
