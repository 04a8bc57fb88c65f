#include "doctest.h"

#include "sweepout/constants.hpp"
#include "sweepout/error.hpp"

#include <cmath>
#include <numbers>

using namespace sweepout;

TEST_CASE("unit ball volumes")
{
    CHECK(omega(1) == 2.0);
    CHECK(omega(2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(omega(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-15));
}

TEST_CASE("n = 2 spot values")
{
    const auto T = build_table(2);
    CHECK(T.c_n == 81.0);
    CHECK(T.alpha_n == doctest::Approx(1.0 / 163.0).epsilon(1e-15));
    CHECK(T.A_n == doctest::Approx(std::sqrt(163.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(T.A_n == doctest::Approx(22.6292).epsilon(1e-5));
    CHECK(T.C_prev == 36.0);
    CHECK(T.A_prime == doctest::Approx(36.0 * std::sqrt(163.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(std::abs(T.single_cell - 12.0 / std::sqrt(std::numbers::pi)) <= 1e-12 * T.single_cell);
}

TEST_CASE("n = 3 single cell coefficient")
{
    const auto T = build_table(3);
    CHECK(T.single_cell == doctest::Approx(36.0 * std::numbers::pi * std::pow(4.0 * std::numbers::pi / 3.0, -2.0 / 3.0)));
    CHECK(T.single_cell == doctest::Approx(43.5).epsilon(0.01));
}

TEST_CASE("table invariants for n = 2..8")
{
    for (int n = 2; n <= 8; ++n) {
        const auto T = build_table(n);
        for (const auto& c : T.entries()) {
            INFO(n, " ", c.name);
            CHECK(std::isfinite(c.value));
            CHECK(c.value > 0.0);
            CHECK_FALSE(c.symbolic.empty());
        }
        CHECK(T.A_prime >= T.C_prev * T.A_n);
        CHECK(T.A_prime >= n * std::pow(omega(n), 1.0 / n) * std::pow(3.0, n - 1));
        CHECK(T.C_n >= T.single_cell);
        const double p = (n - 1.0) / n;
        CHECK(T.C_n >= (1 - 1e-12) * 2 * n * T.A_prime / -std::expm1(p * std::log1p(-T.alpha_prime)));
        CHECK(T.lambda_n == T.alpha_n);
    }
}

TEST_CASE("larger dimensions keep logs finite")
{
    for (int n = 9; n <= 16; ++n) {
        const auto T = build_table(n);
        CHECK(std::isfinite(T.log10_C_n));
        CHECK(std::isfinite(T.log10_N0));
    }
    CHECK_THROWS_AS(build_table(1), Error);
    CHECK_THROWS_AS(build_table(17), Error);
}

TEST_CASE("capacitor radius consistency")
{
    for (int n = 2; n <= 8; ++n) {
        const auto T = build_table(n);
        const double vol = 3.7;
        const double r = std::pow(vol / (omega(n) * (1 + 2 * T.c_n)), 1.0 / n);
        CHECK(std::abs(omega(n) * std::pow(r, n) - T.lambda_n * vol) <= 1e-12 * T.lambda_n * vol);
        CHECK(r == doctest::Approx(T.r_coefficient * std::pow(vol, 1.0 / n)).epsilon(1e-13));
    }
}

TEST_CASE("symbolic forms")
{
    const auto T = build_table(2);
    for (const auto& c : T.entries()) {
        if (c.name == "A_n") CHECK(c.symbolic == "sqrt(163*pi)");
        if (c.name == "c_n") CHECK(c.symbolic == "9^2");
    }
    const auto T3 = build_table(3);
    for (const auto& c : T3.entries())
        if (c.name == "omega_3") CHECK(c.symbolic == "4*pi/3");
}

TEST_CASE("projection ratio")
{
    CHECK(projection_lipschitz_bound(1.0) == 36.0);
    CHECK(projection_lipschitz_bound(2.0) == 144.0);
    CHECK(projection_ratio(0.1) < 36.0);
    const double tmax = std::numbers::pi / 2 - projection_theta();
    double prev = projection_ratio(1e-12);
    CHECK(prev == doctest::Approx(36.0).epsilon(1e-9));
    for (int i = 1; i < 10000; ++i) {
        const double r = projection_ratio(tmax * i / 10000.0);
        CHECK(r <= 36.0);
        CHECK(r <= prev);
        prev = r;
    }
}

TEST_CASE("tables are bit reproducible")
{
    const auto a = build_table(5), b = build_table(5);
    CHECK(a.C_n == b.C_n);
    CHECK(a.N0 == b.N0);
}
