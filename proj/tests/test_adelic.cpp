#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arithcoh/adelic.hpp"
#include "oracles.hpp"

using namespace arithcoh;

namespace {

FieldElement el(long x, long y = 0) { return FieldElement(Rational(x), Rational(y)); }

bool approx_same(const AdelicBundle& a, const AdelicBundle& b, double tol = 1e-12) {
    if (!(a.field() == b.field()) || a.ideals() != b.ideals()) return false;
    for (int p = 0; p < a.field().places(); ++p) {
        const double scale = std::max(1.0, a.at_place(p).cwiseAbs().maxCoeff());
        if ((a.at_place(p) - b.at_place(p)).cwiseAbs().maxCoeff() > tol * scale) return false;
    }
    return true;
}

AdelicBundle line(const NumberField& F, const FractionalIdeal& a) {
    return AdelicBundle(F, {a}, std::vector<Eigen::MatrixXcd>(F.places(), Eigen::MatrixXcd::Identity(1, 1)));
}

double log_disc(const NumberField& F) { return std::log(std::abs(F.discriminant().get_d())); }

} // namespace

TEST_CASE("trivial and canonical bundles") {
    const auto Q = NumberField::rational();
    CHECK(degree(trivial_bundle(Q, 1)) == 0.0);
    CHECK(trivial_bundle(Q, 2).rank() == 2);
    CHECK(canonical_bundle(Q) == trivial_bundle(Q, 1));
    CHECK(degree(canonical_bundle(Q)) == 0.0);
    CHECK(degree(canonical_bundle(NumberField::quadratic(-1))) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(degree(canonical_bundle(NumberField::quadratic(5))) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    for (const auto& F : oracle::suite_fields())
        CHECK(std::abs(degree(canonical_bundle(F)) - log_disc(F)) < 1e-12);
}

TEST_CASE("degree convention") {
    const auto Q = NumberField::rational();
    const auto two = line(Q, principal_ideal(Q, el(2)));
    CHECK(degree(two) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));

    const auto Qi = NumberField::quadratic(-1);
    const AdelicBundle twisted(Qi, {unit_ideal(Qi)},
                               {Eigen::MatrixXcd::Identity(1, 1) * std::numbers::e});
    CHECK(degree(twisted) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("bundle validation") {
    const auto Q = NumberField::rational();
    CHECK_THROWS_AS(AdelicBundle(Q, {}, {}), ArithcohError);
    CHECK_THROWS_AS(AdelicBundle(Q, {unit_ideal(Q)}, {}), ArithcohError);
    CHECK_THROWS_AS(AdelicBundle(Q, {unit_ideal(Q)}, {Eigen::MatrixXcd::Zero(1, 1)}), ArithcohError);
    CHECK_THROWS_AS(AdelicBundle(Q, {unit_ideal(Q)}, {Eigen::MatrixXcd::Identity(2, 2)}), ArithcohError);
    Eigen::MatrixXcd nonreal(1, 1);
    nonreal(0, 0) = {1.0, 1.0};
    CHECK_THROWS_AS(AdelicBundle(Q, {unit_ideal(Q)}, {nonreal}), ArithcohError);
    CHECK_THROWS_AS(tensor_line(trivial_bundle(Q, 1), trivial_bundle(NumberField::quadratic(-1), 1)),
                    ArithcohError);
}

TEST_CASE("dual bundle") {
    const auto Q = NumberField::rational();
    CHECK(dual_bundle(trivial_bundle(Q, 1)) == trivial_bundle(Q, 1));
    const auto two = line(Q, principal_ideal(Q, el(2)));
    const auto d = dual_bundle(two);
    CHECK(d.ideals()[0] == principal_ideal(Q, FieldElement(Rational(1, 2))));
    CHECK(degree(d) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    RandomBundleOptions mixing;
    mixing.mixing = true;
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 10; ++k) {
            const auto b = random_bundle(F, 1 + k % 2, -5, 5, 100 + k, k % 2 ? mixing : RandomBundleOptions{});
            CHECK(approx_same(dual_bundle(dual_bundle(b)), b));
            CHECK(std::abs(degree(dual_bundle(b)) + degree(b)) < 1e-12);
        }
}

TEST_CASE("tensoring by a line") {
    const auto Q = NumberField::rational();
    const auto three = line(Q, principal_ideal(Q, el(3)));
    const auto third = line(Q, principal_ideal(Q, FieldElement(Rational(1, 3))));
    CHECK(tensor_line(three, third) == trivial_bundle(Q, 1));

    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 10; ++k) {
            const auto b = random_bundle(F, 1 + k % 3, -5, 5, 200 + k);
            const auto L = random_bundle(F, 1, -5, 5, 300 + k);
            CHECK(approx_same(tensor_line(b, trivial_bundle(F, 1)), b));
            CHECK(std::abs(degree(tensor_line(b, L)) - degree(b) - b.rank() * degree(L)) < 1e-11);
        }
}

TEST_CASE("serre dual") {
    const auto Q = NumberField::rational();
    CHECK(serre_dual(trivial_bundle(Q, 1)) == trivial_bundle(Q, 1));

    const auto Qi = NumberField::quadratic(-1);
    const auto sd = serre_dual(trivial_bundle(Qi, 1));
    CHECK(sd.ideals()[0] == ideal_inverse(Qi, different_ideal(Qi)));
    CHECK(degree(sd) == doctest::Approx(std::log(4.0)).epsilon(1e-14));

    RandomBundleOptions mixing;
    mixing.mixing = true;
    for (const auto& F : oracle::suite_fields())
        for (int k = 0; k < 20; ++k) {
            const auto b = random_bundle(F, 1 + k % 2, -10, 10, 400 + k, k % 2 ? mixing : RandomBundleOptions{});
            CHECK(approx_same(serre_dual(serre_dual(b)), b));
            CHECK(std::abs(degree(serre_dual(b)) + degree(b) - b.rank() * log_disc(F)) < 1e-12);
        }
}

TEST_CASE("global sections") {
    const auto Q = NumberField::rational();
    const auto two = line(Q, principal_ideal(Q, el(2)));
    CHECK(is_global_section(two, {el(2)}));
    CHECK_FALSE(is_global_section(two, {el(1)}));
    CHECK(is_global_section(two, {el(0)}));
    CHECK_THROWS_AS(is_global_section(two, {el(2), el(2)}), ArithcohError);

    const auto Qi = NumberField::quadratic(-1);
    CHECK(is_global_section(trivial_bundle(Qi, 1), {el(0, 1)}));
    const auto p = line(Qi, principal_ideal(Qi, el(1, 1)));
    CHECK(is_global_section(p, {el(1, 1)}));
    CHECK_FALSE(is_global_section(p, {el(1)}));

    std::mt19937_64 rng(9);
    for (const auto& F : oracle::suite_fields()) {
        const auto b = random_bundle(F, 2, -3, 3, 77);
        CHECK(is_global_section(b, {el(0), el(0)}));
        std::vector<FieldElement> units{el(1), el(-1)};
        if (F.d() == -1) {
            units.push_back(el(0, 1));
            units.push_back(el(0, -1));
        }
        for (int k = 0; k < 50; ++k) {
            std::vector<FieldElement> f{oracle::random_element(rng, F, 30, 2), oracle::random_element(rng, F, 30, 2)};
            if (!is_global_section(b, f)) continue;
            for (const auto& u : units) CHECK(is_global_section(b, {mul(F, u, f[0]), mul(F, u, f[1])}));
        }
        // basis elements of each ideal are sections of that component
        const auto zb = b.ideals()[0].z_basis();
        CHECK(is_global_section(b, {zb[0], el(0)}));
    }
}

TEST_CASE("random bundles") {
    const auto F = NumberField::quadratic(-5);
    CHECK(random_bundle(F, 2, -10, 10, 42) == random_bundle(F, 2, -10, 10, 42));
    CHECK_FALSE(random_bundle(F, 2, -10, 10, 42) == random_bundle(F, 2, -10, 10, 43));
    CHECK_THROWS_AS(random_bundle(F, 1, 1, -1, 0), ArithcohError);

    for (const auto& G : oracle::suite_fields())
        for (std::uint64_t s = 0; s < 200; ++s) {
            const auto b = random_bundle(G, 1, -10, 10, s);
            const double deg = degree(b);
            CHECK(deg >= -10 - 1e-12);
            CHECK(deg <= 10 + 1e-12);
            const auto& a = b.ideals()[0];
            CHECK(a.a() > 0);
            CHECK(a.b() >= 0);
            CHECK(a.b() < a.a());
            CHECK(a.scale().get_num() == 1);
            if (!G.is_rational()) {
                CHECK(a.a() % a.c() == 0);
                CHECK(a.b() % a.c() == 0);
            }
        }
}
