#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "volswap/model.hpp"

namespace volswap {

struct SimConfig {
    long paths = 100000;
    int steps_per_interval = 10; // Euler substeps per sampling interval
    uint64_t seed = 42;
    enum class Scheme { FullTruncationEuler };
    Scheme scheme = Scheme::FullTruncationEuler;
    bool antithetic = false;        // pair 2k/2k+1 with negated Gaussians
    bool eq5_literal_jump = false;  // add (e^{J^S}-1) to X at jumps instead of J^S
    std::vector<double> powervar_orders; // record power variation at these u
    int threads = 0;                // 0 = hardware concurrency
};

// Per-path summaries of a simulated batch. Recorded V and lambda are the
// truncated (effective) values, hence nonnegative. X starts at 0.
struct PathBatch {
    std::vector<double> x_T;
    std::vector<double> v_T;
    std::vector<double> lambda_T;
    std::vector<double> sum_abs_ret;  // sum_i |S_{t_i}/S_{t_{i-1}} - 1|
    std::vector<double> sum_sq_ret;   // sum_i (S_{t_i}/S_{t_{i-1}} - 1)^2
    std::vector<double> last_log_ret; // X_{t_N} - X_{t_{N-1}}
    std::vector<double> int_sqrt_v;   // int_0^T sqrt(V) dt (substep trapezoid)
    std::vector<long> jump_count;

    std::vector<double> orders;                     // recorded power-variation orders
    std::vector<std::vector<double>> powervar_sum;  // [order][path] sum |dX|^u on the substep grid
    std::vector<std::vector<double>> powervar_ref;  // [order][path] int V^{u/2} dt

    uint64_t seed = 0;
    long paths = 0;
    int n_intervals = 0;
    int steps_per_interval = 1;
    double T = 0.0;
    bool antithetic = false;

    double dt_obs() const {
        return T / (static_cast<double>(n_intervals) * steps_per_interval);
    }
};

struct McStrike {
    double estimate = 0.0;       // volatility points
    double standard_error = 0.0;
    long paths = 0;
};

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    long n = 0;
};

// Compensated mean and standard error of a sample.
MeanSe mean_se(std::span<const double> sample);

// Mean/SE of a per-path column; antithetic batches reduce over pair means.
MeanSe mc_mean(const PathBatch& batch, std::span<const double> column);

// Full-truncation Euler simulation of (X, V, lambda) with a Cox jump process:
// negative parts are zeroed inside drift and diffusion only, jump counts per
// substep are Poisson(lambda+ dt'), and the drift carries -lambda+ * m.
PathBatch simulate(const ModelParams& params, const JumpSpec& spec,
                   const SwapContract& contract, const SimConfig& sim);

// RV  = sqrt(pi/(2NT)) * sum_i |R_i - 1| * scale   (volatility-average swap)
// RV* = sqrt((AF/N) * sum_i (R_i - 1)^2) * scale,  AF = N/T
McStrike mc_strike_rv(const PathBatch& batch, const SwapContract& contract);
McStrike mc_strike_rvstar(const PathBatch& batch, const SwapContract& contract);

struct PowerVariation {
    double order = 0.0;
    std::vector<double> estimate;  // (dt)^{1-u/2} sum |Y|^u per path
    std::vector<double> reference; // mu_u int_0^T V^{u/2} ds per path
};

// Requires the order to have been recorded at simulation time.
PowerVariation power_variation(const PathBatch& batch, double u);

// mu_u = E|Z|^u = 2^{u/2} Gamma((u+1)/2) / Gamma(1/2), Z standard normal.
double power_variation_constant(double u);

// Debug dump: one row per path with path_id, RV, RV*, terminal X, jump count.
void dump_paths_csv(const PathBatch& batch, const SwapContract& contract,
                    std::ostream& os);

} // namespace volswap
