#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rieszgas/quadrature.hpp"

using namespace rieszgas;

TEST_CASE("polynomials are integrated essentially exactly") {
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    r = integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -2.0, 5.0, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(119.0).epsilon(1e-13));
}

TEST_CASE("smooth transcendental integrands") {
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    r = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-30, 1.0, 1e-10, 1e-10, 60);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("split points isolate interior kinks") {
    auto f = [](double x) { return std::abs(x - 0.5); };
    auto r = integrate_split(f, 0.0, 1.0, {0.5}, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("error estimate bounds the true error") {
    auto r = integrate([](double x) { return std::cos(10.0 * x); }, 0.0, 2.0, 1e-12, 1e-12);
    CHECK(std::abs(r.value - std::sin(20.0) / 10.0) <= std::max(r.error, 1e-13));
}
