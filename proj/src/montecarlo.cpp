#include "volswap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <thread>

#include "volswap/rng.hpp"

namespace volswap {

MeanSe mean_se(std::span<const double> sample) {
    MeanSe out;
    out.n = static_cast<long>(sample.size());
    if (out.n == 0) return out;

    // compensated (Kahan) accumulation so the reduction is insensitive to
    // magnitude spread across paths
    double sum = 0.0, comp = 0.0;
    for (double x : sample) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    out.mean = sum / static_cast<double>(out.n);
    if (out.n < 2) return out;

    double ss = 0.0, c2 = 0.0;
    for (double x : sample) {
        const double dev = x - out.mean;
        const double y = dev * dev - c2;
        const double t = ss + y;
        c2 = (t - ss) - y;
        ss = t;
    }
    const double var = ss / static_cast<double>(out.n - 1);
    out.se = std::sqrt(var / static_cast<double>(out.n));
    return out;
}

MeanSe mc_mean(const PathBatch& batch, std::span<const double> column) {
    if (!batch.antithetic) return mean_se(column);
    std::vector<double> pair_means(column.size() / 2);
    for (size_t k = 0; k < pair_means.size(); ++k)
        pair_means[k] = 0.5 * (column[2 * k] + column[2 * k + 1]);
    return mean_se(pair_means);
}

namespace {

struct JumpDraw {
    double js = 0.0;
    double jv = 0.0;
};

JumpDraw draw_jump(const JumpSpec& spec, PathRng& rng) {
    JumpDraw j;
    switch (spec.kind) {
    case JumpSpec::Kind::None:
        break;
    case JumpSpec::Kind::DoubleExponential:
        j.js = (rng.uniform() <= spec.p) ? rng.exponential(1.0 / spec.eta1)
                                         : -rng.exponential(1.0 / spec.eta2);
        j.jv = (rng.uniform() <= spec.pPrime) ? rng.exponential(1.0 / spec.eta3)
                                              : -rng.exponential(1.0 / spec.eta4);
        break;
    case JumpSpec::Kind::GaussianExponential:
        j.jv = rng.exponential(spec.eta);
        j.js = spec.nu + spec.rhoJ * j.jv + spec.delta * rng.normal();
        break;
    }
    return j;
}

struct Kernel {
    const ModelParams& params;
    const JumpSpec& spec;
    const SimConfig& sim;
    PathBatch& batch;
    double T;
    int n_intervals;
    double dt;      // substep
    double sq_dt;
    double m;       // mean price jump
    double rho_perp;
    bool has_jumps;
    bool has_lambda_noise;
    int n_orders;

    void run_path(long p) const {
        const uint64_t stream = batch.antithetic ? static_cast<uint64_t>(p / 2)
                                                 : static_cast<uint64_t>(p);
        const bool negate = batch.antithetic && (p % 2 == 1);
        PathRng rng(sim.seed, stream, negate);

        double x = 0.0, v_raw = params.V0, l_raw = params.lambda0;
        double sum_abs = 0.0, sum_sq = 0.0, int_sqrt_v = 0.0;
        double x_prev_date = 0.0, last_ret = 0.0;
        long jumps = 0;

        double pv_sum[8] = {0}, pv_ref[8] = {0};
        double sqrt_v_prev = std::sqrt(std::max(v_raw, 0.0));

        for (int i = 0; i < n_intervals; ++i) {
            for (int k = 0; k < sim.steps_per_interval; ++k) {
                const double vp = std::max(v_raw, 0.0);
                const double lp = std::max(l_raw, 0.0);
                const double sv = std::sqrt(vp);

                const double z1 = rng.normal();
                const double z2 = rng.normal();
                const double zv = params.rho * z1 + rho_perp * z2;
                const double zl = has_lambda_noise ? rng.normal() : 0.0;

                double jump_x = 0.0, jump_v = 0.0;
                if (has_jumps) {
                    const long count = rng.poisson(lp * dt);
                    for (long j = 0; j < count; ++j) {
                        const JumpDraw jd = draw_jump(spec, rng);
                        jump_x += sim.eq5_literal_jump ? std::expm1(jd.js) : jd.js;
                        jump_v += jd.jv;
                    }
                    jumps += count;
                }

                const double x_new = x +
                    (params.r - params.d - lp * m - 0.5 * vp) * dt + sv * sq_dt * z1 +
                    jump_x;
                const double v_new = v_raw + params.kappaV * (params.thetaV - vp) * dt +
                                     params.sigmaV * sv * sq_dt * zv + jump_v;
                const double l_new = l_raw + params.kappaL * (params.thetaL - lp) * dt +
                                     params.sigmaL * std::sqrt(lp) * sq_dt * zl;

                const double sqrt_v_new = std::sqrt(std::max(v_new, 0.0));
                int_sqrt_v += 0.5 * (sqrt_v_prev + sqrt_v_new) * dt;

                if (n_orders > 0) {
                    const double adx = std::abs(x_new - x);
                    const double v_mid_pow_base = vp; // left value of V^{u/2}
                    const double v_new_trunc = std::max(v_new, 0.0);
                    for (int o = 0; o < n_orders; ++o) {
                        const double u = batch.orders[o];
                        pv_sum[o] += std::pow(adx, u);
                        pv_ref[o] += 0.5 * (std::pow(v_mid_pow_base, 0.5 * u) +
                                            std::pow(v_new_trunc, 0.5 * u)) * dt;
                    }
                }

                x = x_new;
                v_raw = v_new;
                l_raw = l_new;
                sqrt_v_prev = sqrt_v_new;
            }
            const double y = x - x_prev_date;
            const double ret = std::expm1(y);
            sum_abs += std::abs(ret);
            sum_sq += ret * ret;
            if (i == n_intervals - 1) last_ret = y;
            x_prev_date = x;
        }

        batch.x_T[p] = x;
        batch.v_T[p] = std::max(v_raw, 0.0);
        batch.lambda_T[p] = std::max(l_raw, 0.0);
        batch.sum_abs_ret[p] = sum_abs;
        batch.sum_sq_ret[p] = sum_sq;
        batch.last_log_ret[p] = last_ret;
        batch.int_sqrt_v[p] = int_sqrt_v;
        batch.jump_count[p] = jumps;
        for (int o = 0; o < n_orders; ++o) {
            batch.powervar_sum[o][p] = pv_sum[o];
            batch.powervar_ref[o][p] = pv_ref[o];
        }
    }
};

} // namespace

PathBatch simulate(const ModelParams& params, const JumpSpec& spec,
                   const SwapContract& contract, const SimConfig& sim) {
    validate(params);
    validate(spec);
    validate(contract);
    if (sim.paths < 1) throw ConfigError("paths must be >= 1");
    if (sim.steps_per_interval < 1) throw ConfigError("stepsPerInterval must be >= 1");
    if (sim.antithetic && sim.paths % 2 != 0)
        throw ConfigError("antithetic sampling needs an even path count");
    if (sim.powervar_orders.size() > 8)
        throw ConfigError("at most 8 power-variation orders per batch");
    for (double u : sim.powervar_orders)
        if (!(u > 0.0 && u < 2.0))
            throw DomainError("power-variation order must lie in (0, 2)");

    PathBatch batch;
    batch.seed = sim.seed;
    batch.paths = sim.paths;
    batch.n_intervals = contract.N;
    batch.steps_per_interval = sim.steps_per_interval;
    batch.T = contract.T;
    batch.antithetic = sim.antithetic;
    batch.orders = sim.powervar_orders;

    const size_t n = static_cast<size_t>(sim.paths);
    batch.x_T.resize(n);
    batch.v_T.resize(n);
    batch.lambda_T.resize(n);
    batch.sum_abs_ret.resize(n);
    batch.sum_sq_ret.resize(n);
    batch.last_log_ret.resize(n);
    batch.int_sqrt_v.resize(n);
    batch.jump_count.resize(n);
    batch.powervar_sum.assign(batch.orders.size(), std::vector<double>(n));
    batch.powervar_ref.assign(batch.orders.size(), std::vector<double>(n));

    Kernel kernel{params,
                  spec,
                  sim,
                  batch,
                  contract.T,
                  contract.N,
                  contract.T / (static_cast<double>(contract.N) * sim.steps_per_interval),
                  0.0,
                  mean_price_jump(spec),
                  std::sqrt(std::max(0.0, 1.0 - params.rho * params.rho)),
                  spec.kind != JumpSpec::Kind::None,
                  params.sigmaL > 0.0,
                  static_cast<int>(batch.orders.size())};
    kernel.sq_dt = std::sqrt(kernel.dt);

    const unsigned hw = std::thread::hardware_concurrency();
    const int n_threads = sim.threads > 0 ? sim.threads : std::max(1u, hw);
    if (n_threads <= 1 || sim.paths < 256) {
        for (long p = 0; p < sim.paths; ++p) kernel.run_path(p);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (sim.paths + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const long lo = t * chunk;
            const long hi = std::min(sim.paths, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&kernel, lo, hi] {
                for (long p = lo; p < hi; ++p) kernel.run_path(p);
            });
        }
        for (std::thread& th : pool) th.join();
    }
    return batch;
}

namespace {

void check_batch_contract(const PathBatch& batch, const SwapContract& contract) {
    if (batch.n_intervals != contract.N || batch.T != contract.T)
        throw ConfigError("batch was not sampled on the contract's date grid");
}

McStrike column_strike(const PathBatch& batch, std::span<const double> column) {
    const MeanSe ms = mc_mean(batch, column);
    return McStrike{ms.mean, ms.se, batch.paths};
}

} // namespace

McStrike mc_strike_rv(const PathBatch& batch, const SwapContract& contract) {
    check_batch_contract(batch, contract);
    const double factor = std::sqrt(std::numbers::pi / (2.0 * contract.N * contract.T)) *
                          contract.vol_points_scale;
    std::vector<double> rv(batch.sum_abs_ret.size());
    for (size_t p = 0; p < rv.size(); ++p) rv[p] = factor * batch.sum_abs_ret[p];
    return column_strike(batch, rv);
}

McStrike mc_strike_rvstar(const PathBatch& batch, const SwapContract& contract) {
    check_batch_contract(batch, contract);
    // AF/N = 1/T
    std::vector<double> rv(batch.sum_sq_ret.size());
    for (size_t p = 0; p < rv.size(); ++p)
        rv[p] = std::sqrt(batch.sum_sq_ret[p] / contract.T) * contract.vol_points_scale;
    return column_strike(batch, rv);
}

double power_variation_constant(double u) {
    if (!(u > 0.0)) throw DomainError("power-variation order must be positive");
    return std::pow(2.0, 0.5 * u) * std::tgamma(0.5 * (u + 1.0)) / std::tgamma(0.5);
}

PowerVariation power_variation(const PathBatch& batch, double u) {
    if (!(u > 0.0 && u < 2.0))
        throw DomainError("power-variation order must lie in (0, 2)");
    size_t idx = batch.orders.size();
    for (size_t o = 0; o < batch.orders.size(); ++o)
        if (batch.orders[o] == u) idx = o;
    if (idx == batch.orders.size())
        throw ConfigError("order was not recorded at simulation time");

    PowerVariation pv;
    pv.order = u;
    const double norm = std::pow(batch.dt_obs(), 1.0 - 0.5 * u);
    const double mu = power_variation_constant(u);
    const size_t n = batch.powervar_sum[idx].size();
    pv.estimate.resize(n);
    pv.reference.resize(n);
    for (size_t p = 0; p < n; ++p) {
        pv.estimate[p] = norm * batch.powervar_sum[idx][p];
        pv.reference[p] = mu * batch.powervar_ref[idx][p];
    }
    return pv;
}

void dump_paths_csv(const PathBatch& batch, const SwapContract& contract,
                    std::ostream& os) {
    const double rv_factor =
        std::sqrt(std::numbers::pi / (2.0 * contract.N * contract.T)) *
        contract.vol_points_scale;
    os << "path_id,rv,rvstar,terminal_x,jump_count\n";
    char line[160];
    for (long p = 0; p < batch.paths; ++p) {
        const double rv = rv_factor * batch.sum_abs_ret[p];
        const double rvstar = std::sqrt(batch.sum_sq_ret[p] / contract.T) *
                              contract.vol_points_scale;
        std::snprintf(line, sizeof(line), "%ld,%.10g,%.10g,%.10g,%ld\n", p, rv, rvstar,
                      batch.x_T[p], batch.jump_count[p]);
        os << line;
    }
}

} // namespace volswap
