#pragma once

#include <complex>
#include <string>
#include <vector>

#include "volswap/errors.hpp"

namespace volswap {

using Cplx = std::complex<double>;

// Diffusion / intensity coefficients and initial states. All rates are
// annualized decimals; variances are annualized (1/year).
struct ModelParams {
    double r = 0.0;        // risk-free rate
    double d = 0.0;        // dividend yield
    double V0 = 0.04;      // initial instantaneous variance
    double lambda0 = 0.0;  // initial jump intensity
    double kappaV = 1.0;   // variance mean-reversion speed
    double thetaV = 0.04;  // variance long-run mean
    double sigmaV = 0.0;   // vol of variance
    double kappaL = 1.0;   // intensity mean-reversion speed
    double thetaL = 0.0;   // intensity long-run mean
    double sigmaL = 0.0;   // vol of intensity
    double rho = 0.0;      // corr(W^S, W^V)
};

// Law of the simultaneous jump pair (J^S, J^V).
//
// DoubleExponential: J^S and J^V independent, each asymmetric double
// exponential; density p*eta1*exp(-eta1*y) for y>=0 plus q*eta2*exp(eta2*y)
// for y<0 (and primed parameters for J^V).
// GaussianExponential: J^V ~ Exp(mean eta), J^S | J^V ~ N(nu + rhoJ*J^V, delta^2).
struct JumpSpec {
    enum class Kind { None, DoubleExponential, GaussianExponential };
    Kind kind = Kind::None;

    // double-exponential parameters
    double p = 0.5, eta1 = 10.0, eta2 = 10.0;       // price jump
    double pPrime = 1.0, eta3 = 10.0, eta4 = 10.0;  // variance jump

    // gaussian-conditional-on-exponential parameters
    double nu = 0.0, delta = 0.0, rhoJ = 0.0, eta = 0.05;

    // Evaluate the printed power-form of the double-exponential jump term
    // instead of the product of the two marginal transforms (comparison only).
    bool paper_literal_transform = false;

    static JumpSpec none() { return JumpSpec{}; }
    static JumpSpec double_exponential(double p, double eta1, double eta2,
                                       double pPrime, double eta3, double eta4) {
        JumpSpec s;
        s.kind = Kind::DoubleExponential;
        s.p = p; s.eta1 = eta1; s.eta2 = eta2;
        s.pPrime = pPrime; s.eta3 = eta3; s.eta4 = eta4;
        return s;
    }
    static JumpSpec gaussian_exponential(double nu, double delta, double rhoJ, double eta) {
        JumpSpec s;
        s.kind = Kind::GaussianExponential;
        s.nu = nu; s.delta = delta; s.rhoJ = rhoJ; s.eta = eta;
        return s;
    }
};

// Volatility swap: N equally spaced sampling intervals over tenor T,
// strike quoted in annualized volatility points (x100 by convention).
struct SwapContract {
    double T = 1.0;                  // tenor, years
    int N = 252;                     // sampling intervals
    double notional = 1.0;           // currency per volatility point
    double vol_points_scale = 100.0; // reporting scale

    double dt() const { return T / N; }
};

// Hard invariants throw ConfigError naming the violated condition; soft
// conditions (Feller) are returned as warnings.
std::vector<std::string> validate(const ModelParams& params);
void validate(const JumpSpec& spec);
void validate(const SwapContract& contract);

// E[exp(omega*J^S + c*J^V)]. Throws DomainError outside the admissibility
// strip, where the defining integral diverges.
Cplx joint_jump_transform(const JumpSpec& spec, Cplx omega, Cplx c);

// m = E[e^{J^S}] - 1, the average relative price jump compensated in the drift.
double mean_price_jump(const JumpSpec& spec);

// Jump term of the D-equation: -m*omega + E[exp(omega*J^S + c*J^V)] - 1.
// With paper_literal_transform set (double-exponential only) evaluates the
// printed power form A^omega * B^c - (A-1)*omega - 1 instead.
Cplx big_lambda(const JumpSpec& spec, Cplx omega, Cplx c);

// True if (omega, c) lies strictly inside the strip where the jump transform
// is finite. Used by the ODE solver's step-wise admissibility check.
bool jump_transform_admissible(const JumpSpec& spec, Cplx omega, Cplx c);

} // namespace volswap
