#pragma once

#include <unordered_map>
#include <vector>

#include "volswap/affine.hpp"

namespace volswap {

// U(tau, x, v, lambda) = exp(omega*x + C*v + D*lambda + E).
Cplx mgf_joint(const ModelParams& params, const JumpSpec& spec,
               const FrequencyArgument& q, double tau,
               double x, double v, double lambda, const OdeOptions& opts = {});

// Laplace transform of the variance marginal started from (V0, lambda0):
// E[exp(-s*V_tau)] = mgf_joint with q = (0, -s, 0, 0).
Cplx mgf_marginal_variance(const ModelParams& params, const JumpSpec& spec,
                           Cplx s, double tau, const OdeOptions& opts = {});

// E[exp(omega*(X_{t_i} - X_{t_{i-1}}))] with t_i = i*dt, from time 0, by the
// tower property: one solve over dt with exponent (omega,0,0,0) giving
// (C1,D1,E1), then a solve over t_{i-1} with exponent (0,C1,D1,E1); i = 1
// collapses to the single stage.
Cplx increment_cf(const ModelParams& params, const JumpSpec& spec,
                  Cplx omega, int i, double dt, const OdeOptions& opts = {});

// Increment CFs for all sampling intervals i = 1..n at once: the second-stage
// solve emits every horizon (i-1)*dt in one integrator pass, and rows are
// memoized per frequency so adajcent quadratures share the work. Not safe for
// concurrent use; pricing routines own one instance per call.
class IncrementCfTable {
public:
    IncrementCfTable(const ModelParams& params, const JumpSpec& spec,
                     double dt, int n_intervals, const OdeOptions& opts = {});

    // Phi_i(z) for i = 1..n (index i-1), cached by z
    const std::vector<Cplx>& row(Cplx z);

    long ode_solves() const { return solves_; }

private:
    struct KeyHash {
        size_t operator()(const std::pair<double, double>& k) const noexcept;
    };

    ModelParams params_;
    JumpSpec spec_;
    double dt_;
    int n_;
    OdeOptions opts_;
    std::vector<double> stage2_taus_;
    long solves_ = 0;
    std::unordered_map<std::pair<double, double>, std::vector<Cplx>, KeyHash> cache_;
};

// log E[exp(-s*V_t)] on a fixed time grid, cached per Laplace argument s; one
// integrator pass per s emits all grid times. Exponents rather than values so
// callers can form 1 - E[...] without cancellation (expm1).
class VarianceLaplaceTable {
public:
    VarianceLaplaceTable(const ModelParams& params, const JumpSpec& spec,
                         std::vector<double> times, const OdeOptions& opts = {});

    const std::vector<double>& row(double s);

    long ode_solves() const { return solves_; }

private:
    ModelParams params_;
    JumpSpec spec_;
    std::vector<double> times_;
    OdeOptions opts_;
    long solves_ = 0;
    std::unordered_map<double, std::vector<double>> cache_;
};

} // namespace volswap
