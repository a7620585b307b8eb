#pragma once

#include "volswap/mgf.hpp"
#include "volswap/quadrature.hpp"

namespace volswap {

struct QuadratureConfig {
    double omega_max = 200.0;  // truncation of the semi-infinite integrals
    bool auto_omega_max = true; // widen the bound to cover the CF envelope
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_panels = 4000;      // adaptive panel budget per integral
    bool s_substitution = true; // s = u^2 in the Laplace strike integral
    int time_nodes = 64;        // Gauss-Legendre nodes of the outer time integral
    double tail_safety = 10.0;  // tail > safety * tolerance raises QuadratureError
    OdeOptions ode;
};

struct StrikeResult {
    double strike = 0.0;        // in contract reporting units (x100 by default)
    double tail_estimate = 0.0; // truncation-tail bound, same units as strike
    long evaluations = 0;       // integrand evaluations
    long ode_solves = 0;
    std::vector<double> interval_contributions; // per-interval E|R_i - 1|
};

// Effective truncation bound of the frequency integral for an increment over
// dt: the CF envelope decays like exp(-V*dt*w^2/2), so the bound must scale
// with 1/sqrt(V*dt) to keep the tail below tolerance.
double effective_omega_bound(const ModelParams& params, double dt,
                             const QuadratureConfig& quad);

// E|S_{t_i}/S_{t_{i-1}} - 1| = (2/pi) Int_0^inf Im[Phi_i(1+iw) - Phi_i(iw)]/w dw
// with Phi_i the increment CF of the i-th sampling interval.
double expected_abs_return(const ModelParams& params, const JumpSpec& spec,
                           int i, double dt, const QuadratureConfig& quad = {});

// Q_i = P(Y_i > 0) = 1/2 + (1/pi) Int_0^inf Im[Phi_i(iw)]/w dw.
double positive_return_probability(const ModelParams& params, const JumpSpec& spec,
                                   int i, double dt, const QuadratureConfig& quad = {});

// Tilted variant: 1/2 + (1/pi) Int_0^inf Im[exp(-r dt) Phi_i(1+iw)]/w dw,
// the mass of exp(y - r dt) p(y) on y > 0.
double tilted_return_probability(const ModelParams& params, const JumpSpec& spec,
                                 int i, double dt, const QuadratureConfig& quad = {});

// Fair discrete-sampling strike: sqrt(pi/(2NT)) * sum_i E|R_i - 1| * scale.
StrikeResult discrete_strike(const ModelParams& params, const JumpSpec& spec,
                             const SwapContract& contract,
                             const QuadratureConfig& quad = {});

// Fair continuous-sampling strike:
//   scale/(2 sqrt(pi) T) Int_0^T Int_0^inf (1 - E[e^{-s V_t}]) / s^{3/2} ds dt,
// inner integral under s = u^2 by default (integrand 2(1 - E[e^{-u^2 V_t}])/u^2,
// no endpoint singularity), remaining tail past the bound added analytically.
StrikeResult continuous_strike(const ModelParams& params, const JumpSpec& spec,
                               const SwapContract& contract,
                               const QuadratureConfig& quad = {});

} // namespace volswap
