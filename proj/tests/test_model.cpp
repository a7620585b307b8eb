#include <doctest.h>

#include <cmath>
#include <complex>

#include "volswap/model.hpp"
#include "volswap/quadrature.hpp"
#include "volswap/rng.hpp"

using namespace volswap;

namespace {

JumpSpec table_spec() {
    // Table-style double-exponential price jumps, upward variance jumps
    return JumpSpec::double_exponential(0.5, 1.2, 2.0, 1.0, 2.2, 3.0);
}

// independent oracle: E[exp(z*J)] for the asymmetric double-exponential law
// by direct quadrature of the density
Cplx kou_transform_by_quadrature(double p, double eta1, double eta2, Cplx z) {
    // integrand decays like exp(-(eta1 - Re z) y) up, exp(-(eta2 + Re z) y) down
    const double up_span = 80.0 / (eta1 - z.real());
    const double down_span = 80.0 / (eta2 + z.real());
    auto density = [&](double y) {
        return y >= 0.0 ? p * eta1 * std::exp(-eta1 * y)
                        : (1.0 - p) * eta2 * std::exp(eta2 * y);
    };
    auto integrate = [&](auto f) {
        const QuadResult up = adaptive_gauss_kronrod(
            [&](double y) { return f(y) * density(y); }, 0.0, up_span, 1e-13, 1e-15,
            2000, geometric_breakpoints(0.0, up_span, 0.125 / eta1));
        const QuadResult down = adaptive_gauss_kronrod(
            [&](double y) { return f(-y) * density(-y); }, 0.0, down_span, 1e-13, 1e-15,
            2000, geometric_breakpoints(0.0, down_span, 0.125 / eta2));
        return up.value + down.value;
    };
    const double re = integrate([&](double y) {
        return std::exp(z.real() * y) * std::cos(z.imag() * y);
    });
    const double im = integrate([&](double y) {
        return std::exp(z.real() * y) * std::sin(z.imag() * y);
    });
    return Cplx(re, im);
}

} // namespace

TEST_CASE("transform trivial values") {
    const JumpSpec none = JumpSpec::none();
    const JumpSpec dexp = table_spec();
    const JumpSpec gexp = JumpSpec::gaussian_exponential(-0.1, 0.2, 0.0, 0.05);

    CHECK(joint_jump_transform(none, Cplx(3.0, 2.0), -1.0) == Cplx(1.0, 0.0));
    for (const JumpSpec& s : {none, dexp, gexp})
        CHECK(joint_jump_transform(s, 0.0, 0.0) == Cplx(1.0, 0.0));

    CHECK(mean_price_jump(none) == 0.0);
    // single-sided exponential price jump: E e^J = eta/(eta-1)
    JumpSpec single = JumpSpec::double_exponential(1.0, 2.0, 5.0, 1.0, 3.0, 3.0);
    CHECK(mean_price_jump(single) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("big_lambda compensation identities") {
    const JumpSpec dexp = table_spec();
    const JumpSpec gexp = JumpSpec::gaussian_exponential(-0.1, 0.15, -0.38, 0.05);
    const JumpSpec none = JumpSpec::none();

    for (const JumpSpec& s : {dexp, gexp}) {
        CHECK(std::abs(big_lambda(s, 0.0, 0.0)) < 1e-15);
        CHECK(std::abs(big_lambda(s, 1.0, 0.0)) < 1e-14); // martingale compensation
    }
    CHECK(big_lambda(none, Cplx(0.3, 1.7), Cplx(-2.0, 0.4)) == Cplx(0.0, 0.0));

    JumpSpec literal = dexp;
    literal.paper_literal_transform = true;
    CHECK(std::abs(big_lambda(literal, 1.0, 0.0)) < 1e-14);
    // printed power form differs from the product-of-transforms away from (1,0)
    CHECK(std::abs(big_lambda(literal, Cplx(0.0, 0.5), 0.0) -
                   big_lambda(dexp, Cplx(0.0, 0.5), 0.0)) > 1e-6);
}

TEST_CASE("double-exponential transform against density quadrature") {
    const JumpSpec s = table_spec();

    for (const Cplx z : {Cplx(1.0, 0.0), Cplx(0.0, 0.5), Cplx(0.5, 2.0), Cplx(-1.5, 1.0)}) {
        const Cplx got = joint_jump_transform(s, z, 0.0);
        const Cplx expected = kou_transform_by_quadrature(s.p, s.eta1, s.eta2, z);
        CHECK(std::abs(got - expected) < 1e-10);
    }

    // joint argument factorizes over the independent pair
    const Cplx z(0.5, 0.7), c(-0.4, 0.2);
    const Cplx joint = joint_jump_transform(s, z, c);
    const Cplx price = kou_transform_by_quadrature(s.p, s.eta1, s.eta2, z);
    const Cplx var = kou_transform_by_quadrature(s.pPrime, s.eta3, s.eta4, c);
    CHECK(std::abs(joint - price * var) < 1e-10);
}

TEST_CASE("big_lambda at a CF argument against the quadrature oracle") {
    const JumpSpec s = table_spec();
    const Cplx omega(0.0, 0.5);
    const Cplx lam = big_lambda(s, omega, 0.0);
    const double m = mean_price_jump(s);
    const Cplx expected = -m * omega + kou_transform_by_quadrature(s.p, s.eta1, s.eta2, omega) - 1.0;
    CHECK(std::abs(lam - expected) < 1e-10);
}

TEST_CASE("transform at (1,0) against a sampling oracle") {
    // spec example: p=0.5, eta1=2.2, eta2=3.0 and the same for the variance leg
    const JumpSpec s = JumpSpec::double_exponential(0.5, 2.2, 3.0, 0.5, 2.2, 3.0);
    const double analytic = joint_jump_transform(s, 1.0, 0.0).real();

    PathRng rng(20240801, 0);
    const long n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double j = (rng.uniform() <= s.p) ? rng.exponential(1.0 / s.eta1)
                                                : -rng.exponential(1.0 / s.eta2);
        const double x = std::exp(j);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / (n - 1));
    CHECK(std::abs(analytic - mean) < 3.0 * se);
    CHECK(mean_price_jump(s) == doctest::Approx(analytic - 1.0));
}

TEST_CASE("gaussian-exponential closed forms") {
    // rhoJ = 0: m = exp(nu + delta^2/2) - 1
    const JumpSpec s = JumpSpec::gaussian_exponential(-0.1, 0.2, 0.0, 0.05);
    CHECK(mean_price_jump(s) ==
          doctest::Approx(std::exp(-0.1 + 0.02) - 1.0).epsilon(1e-14));

    // sampling cross-check with rhoJ != 0
    const JumpSpec c = JumpSpec::gaussian_exponential(-0.05, 0.1, 0.4, 0.03);
    PathRng rng(77, 3);
    const long n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double jv = rng.exponential(c.eta);
        const double js = c.nu + c.rhoJ * jv + c.delta * rng.normal();
        const double x = std::exp(js);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / (n - 1));
    CHECK(std::abs(1.0 + mean_price_jump(c) - mean) < 3.0 * se);
}

TEST_CASE("transform values on real admissible arguments are real positive") {
    const JumpSpec dexp = table_spec();
    const JumpSpec gexp = JumpSpec::gaussian_exponential(-0.1, 0.15, -0.38, 0.05);
    for (double w : {-1.5, -0.5, 0.0, 0.7, 1.1}) {
        for (double c : {-2.5, -1.0, 0.0, 1.5}) {
            if (!jump_transform_admissible(dexp, w, c)) continue;
            const Cplx v = joint_jump_transform(dexp, w, c);
            CHECK(v.imag() == 0.0);
            CHECK(v.real() > 0.0);
        }
        const Cplx g = joint_jump_transform(gexp, w, -1.0);
        CHECK(g.imag() == 0.0);
        CHECK(g.real() > 0.0);
    }
}

TEST_CASE("transform preconditions raise DomainError") {
    const JumpSpec s = table_spec();
    CHECK_THROWS_AS(joint_jump_transform(s, Cplx(1.3, 0.0), 0.0), DomainError); // >= eta1
    CHECK_THROWS_AS(joint_jump_transform(s, Cplx(-2.0, 0.0), 0.0), DomainError); // <= -eta2
    CHECK_THROWS_AS(joint_jump_transform(s, 0.0, Cplx(2.5, 0.0)), DomainError);  // >= eta3

    const JumpSpec g = JumpSpec::gaussian_exponential(0.0, 0.1, 0.5, 0.5);
    CHECK_THROWS_AS(joint_jump_transform(g, 0.0, Cplx(2.0, 0.0)), DomainError);
    CHECK_THROWS_AS(mean_price_jump(JumpSpec::gaussian_exponential(0.0, 0.1, 3.0, 0.5)),
                    DomainError); // rhoJ*eta >= 1
}

TEST_CASE("parameter validation") {
    ModelParams baseline;
    baseline.r = 0.05;
    baseline.d = 0.005;
    baseline.V0 = 0.04;
    baseline.lambda0 = 0.02;
    baseline.kappaV = 10.0;
    baseline.thetaV = 0.05;
    baseline.sigmaV = 0.6;
    baseline.kappaL = 3.0;
    baseline.thetaL = 0.02;
    baseline.sigmaL = 0.1;
    baseline.rho = -0.64;
    CHECK(validate(baseline).empty()); // baseline passes, no Feller warning

    ModelParams bad = baseline;
    bad.kappaV = -1.0;
    CHECK_THROWS_WITH_AS(static_cast<void>(validate(bad)), "kappaV must be > 0", ConfigError);

    ModelParams feller = baseline;
    feller.sigmaV = 1.2; // 2*10*0.05 = 1 < 1.44
    const auto warnings = validate(feller);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("Feller") != std::string::npos);

    JumpSpec s = table_spec();
    s.eta1 = 1.0;
    CHECK_THROWS_AS(validate(s), ConfigError);

    SwapContract c;
    c.N = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}
