#include <doctest.h>

#include <cmath>
#include <numbers>

#include "volswap/quadrature.hpp"

using namespace volswap;

TEST_CASE("adaptive GK reproduces known integrals") {
    const QuadResult g = adaptive_gauss_kronrod(
        [](double x) { return std::exp(-x * x); }, 0.0, 40.0, 1e-12, 1e-14, 400,
        geometric_breakpoints(0.0, 40.0, 0.5));
    CHECK(g.value == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));

    // oscillatory with a decaying envelope
    const QuadResult o = adaptive_gauss_kronrod(
        [](double x) { return std::cos(10.0 * x) * std::exp(-x); }, 0.0, 60.0, 1e-12,
        1e-14, 2000, geometric_breakpoints(0.0, 60.0, 0.25));
    CHECK(o.value == doctest::Approx(1.0 / 101.0).epsilon(1e-10));
}

TEST_CASE("adaptive GK is deterministic and orders panels by position") {
    auto f = [](double x) { return std::sin(x) / (1.0 + x * x); };
    const QuadResult a = adaptive_gauss_kronrod(f, 0.0, 30.0, 1e-10, 1e-14, 500);
    const QuadResult b = adaptive_gauss_kronrod(f, 0.0, 30.0, 1e-10, 1e-14, 500);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("last panel tracks the rightmost contribution") {
    const QuadResult r = adaptive_gauss_kronrod(
        [](double x) { return std::exp(-x); }, 0.0, 20.0, 1e-10, 1e-14, 200,
        {1.0, 2.0, 4.0, 8.0, 16.0});
    const double expected_tail_panel = std::exp(-16.0) - std::exp(-20.0);
    CHECK(r.last_panel == doctest::Approx(expected_tail_panel).epsilon(1e-10));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const GaussLegendreRule rule = gauss_legendre(12, -1.0, 3.0);
    double integral = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        integral += rule.weights[i] * (5.0 * x * x * x * x * x - x * x + 2.0);
    }
    // exact: int_{-1}^{3} 5x^5 - x^2 + 2 dx
    const double exact = (std::pow(3.0, 6) - 1.0) * 5.0 / 6.0 -
                         (std::pow(3.0, 3) + 1.0) / 3.0 + 2.0 * 4.0;
    CHECK(integral == doctest::Approx(exact).epsilon(1e-13));

    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(4.0).epsilon(1e-14));
}
