#include "volswap/pricing.hpp"

#include <cmath>
#include <numbers>

namespace volswap {

namespace {

constexpr double kOmegaFloor = 1e-8; // quadrature starts just above 0 (0/0 limit)

struct FrequencyIntegral {
    double value;
    double last_panel;
    long evaluations;
};

// Int_{~0}^{bound} f(w) dw with geometric panels and the last-panel tail check.
FrequencyIntegral frequency_integral(const std::function<double(double)>& f,
                                     double bound, const QuadratureConfig& quad,
                                     const char* what) {
    const QuadResult r =
        adaptive_gauss_kronrod(f, kOmegaFloor, bound, quad.rel_tol, quad.abs_tol,
                               quad.max_panels, geometric_breakpoints(kOmegaFloor, bound, 0.25));
    const double tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value));
    if (std::abs(r.last_panel) > quad.tail_safety * tol)
        throw QuadratureError(std::string(what) +
                              ": tail estimate exceeds tolerance at omegaMax; "
                              "increase omegaMax or enable autoOmegaMax");
    return {r.value, r.last_panel, r.evaluations};
}

} // namespace

double effective_omega_bound(const ModelParams& params, double dt,
                             const QuadratureConfig& quad) {
    if (!quad.auto_omega_max) return quad.omega_max;
    const double v_ref = std::max(params.V0, params.thetaV);
    return std::max(quad.omega_max, 40.0 / std::sqrt(v_ref * dt));
}

double expected_abs_return(const ModelParams& params, const JumpSpec& spec,
                           int i, double dt, const QuadratureConfig& quad) {
    IncrementCfTable table(params, spec, dt, i, quad.ode);
    const double bound = effective_omega_bound(params, dt, quad);
    const auto f = [&](double w) {
        const Cplx upper = table.row(Cplx(1.0, w))[i - 1];
        const Cplx lower = table.row(Cplx(0.0, w))[i - 1];
        return (upper.imag() - lower.imag()) / w;
    };
    return 2.0 / std::numbers::pi *
           frequency_integral(f, bound, quad, "expected_abs_return").value;
}

double positive_return_probability(const ModelParams& params, const JumpSpec& spec,
                                   int i, double dt, const QuadratureConfig& quad) {
    IncrementCfTable table(params, spec, dt, i, quad.ode);
    const double bound = effective_omega_bound(params, dt, quad);
    const auto f = [&](double w) { return table.row(Cplx(0.0, w))[i - 1].imag() / w; };
    return 0.5 + frequency_integral(f, bound, quad, "positive_return_probability").value /
                     std::numbers::pi;
}

double tilted_return_probability(const ModelParams& params, const JumpSpec& spec,
                                 int i, double dt, const QuadratureConfig& quad) {
    IncrementCfTable table(params, spec, dt, i, quad.ode);
    const double bound = effective_omega_bound(params, dt, quad);
    const auto f = [&](double w) { return table.row(Cplx(1.0, w))[i - 1].imag() / w; };
    return 0.5 + std::exp(-params.r * dt) *
                     frequency_integral(f, bound, quad, "tilted_return_probability").value /
                     std::numbers::pi;
}

StrikeResult discrete_strike(const ModelParams& params, const JumpSpec& spec,
                             const SwapContract& contract, const QuadratureConfig& quad) {
    validate(params);
    validate(spec);
    validate(contract);

    const int n = contract.N;
    const double dt = contract.dt();
    IncrementCfTable table(params, spec, dt, n, quad.ode);
    const double bound = effective_omega_bound(params, dt, quad);

    StrikeResult res;
    res.interval_contributions.resize(n);
    double tail = 0.0;
    for (int i = 1; i <= n; ++i) {
        const auto f = [&](double w) {
            const Cplx upper = table.row(Cplx(1.0, w))[i - 1];
            const Cplx lower = table.row(Cplx(0.0, w))[i - 1];
            return (upper.imag() - lower.imag()) / w;
        };
        const FrequencyIntegral part = frequency_integral(f, bound, quad, "discrete_strike");
        res.interval_contributions[i - 1] = 2.0 / std::numbers::pi * part.value;
        tail += std::abs(part.last_panel) * 2.0 / std::numbers::pi;
        res.evaluations += part.evaluations;
    }

    const double annualizer = std::sqrt(std::numbers::pi / (2.0 * n * contract.T));
    double sum = 0.0;
    for (double c : res.interval_contributions) sum += c;
    res.strike = annualizer * sum * contract.vol_points_scale;
    res.tail_estimate = annualizer * tail * contract.vol_points_scale;
    res.ode_solves = table.ode_solves();
    return res;
}

StrikeResult continuous_strike(const ModelParams& params, const JumpSpec& spec,
                               const SwapContract& contract, const QuadratureConfig& quad) {
    validate(params);
    validate(spec);
    validate(contract);

    const double T = contract.T;
    const GaussLegendreRule time_rule = gauss_legendre(quad.time_nodes, 0.0, T);
    VarianceLaplaceTable table(params, spec, time_rule.nodes, quad.ode);

    double u_bound = quad.omega_max;
    if (quad.auto_omega_max) {
        const double v_small = std::min(params.V0, params.thetaV);
        u_bound = std::max(quad.omega_max, std::sqrt(2000.0 / v_small));
    }
    const double s_max = u_bound * u_bound;

    StrikeResult res;
    double time_integral = 0.0;
    double tail = 0.0;
    for (size_t k = 0; k < time_rule.nodes.size(); ++k) {
        double inner;
        double node_tail;
        if (quad.s_substitution) {
            // Int_0^inf 2(1 - L(u^2))/u^2 du; tail beyond the bound is 2/u_bound
            // minus an L-term bounded by 2 L(u_bound^2)/u_bound.
            const auto f = [&](double u) {
                const double w = table.row(u * u)[k];
                return 2.0 * (-std::expm1(w)) / (u * u);
            };
            const QuadResult r = adaptive_gauss_kronrod(
                f, 0.0, u_bound, quad.rel_tol, quad.abs_tol, quad.max_panels,
                geometric_breakpoints(0.0, u_bound, 0.25));
            inner = r.value + 2.0 / u_bound;
            node_tail = 2.0 * std::exp(table.row(s_max)[k]) / u_bound;
            res.evaluations += r.evaluations;
        } else {
            // direct s-integration: integrable 1/sqrt(s) behaviour at 0 handled
            // by geometric panels plus an analytic [0, s0] correction
            const double s0 = 1e-12;
            const auto f = [&](double s) {
                const double w = table.row(s)[k];
                return -std::expm1(w) / (s * std::sqrt(s));
            };
            const QuadResult r = adaptive_gauss_kronrod(
                f, s0, s_max, quad.rel_tol, quad.abs_tol, quad.max_panels,
                geometric_breakpoints(s0, s_max, 1e-11));
            const double near_zero = 2.0 * (-std::expm1(table.row(s0)[k])) / std::sqrt(s0);
            inner = r.value + near_zero + 2.0 / std::sqrt(s_max);
            node_tail = 2.0 * std::exp(table.row(s_max)[k]) / std::sqrt(s_max);
            res.evaluations += r.evaluations;
        }
        time_integral += time_rule.weights[k] * inner;
        tail += time_rule.weights[k] * node_tail;
    }

    const double natural = time_integral / (2.0 * std::sqrt(std::numbers::pi) * T);
    res.strike = natural * contract.vol_points_scale;
    res.tail_estimate = tail / (2.0 * std::sqrt(std::numbers::pi) * T) *
                        contract.vol_points_scale;
    res.ode_solves = table.ode_solves();

    const double tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(res.strike));
    if (res.tail_estimate > quad.tail_safety * tol)
        throw QuadratureError("continuous_strike: Laplace tail exceeds tolerance at "
                              "omegaMax; increase omegaMax or enable autoOmegaMax");
    return res;
}

} // namespace volswap
