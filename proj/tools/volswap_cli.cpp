// volswap: batch front end for the volatility-swap pricing library.
//
// Commands: price, sweep, mc, powervar. All inputs come from a flat JSON
// config; --seed and --paths override the config. CSV output (--out) is
// byte-deterministic for a given config and seed.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "volswap/montecarlo.hpp"
#include "volswap/pricing.hpp"

using nlohmann::json;
using namespace volswap;

namespace {

struct RunConfig {
    ModelParams params;
    JumpSpec spec;
    SwapContract contract;
    QuadratureConfig quad;
    SimConfig sim;

    bool with_mc = false;          // price: add an MC column
    bool with_continuous = false;  // sweep: add a continuous-strike column
    std::string dump_path;         // mc: per-path CSV dump

    std::string sweep_param;
    std::vector<double> sweep_grid;
    std::string sweep_param2;
    std::vector<double> sweep_grid2;

    std::vector<double> pv_orders{0.5, 1.0, 1.5};
    int pv_levels = 3;
    int pv_base_steps = 4;
};

const std::set<std::string> kKnownKeys = {
    // model
    "r", "d", "V0", "lambda0", "kappaV", "thetaV", "sigmaV", "kappaL", "thetaL",
    "sigmaL", "rho",
    // jumps
    "jump", "p", "eta1", "eta2", "pPrime", "eta3", "eta4", "nu", "delta", "rhoJ",
    "eta", "paperLiteralTransform",
    // contract
    "T", "N", "notional", "volPointsScale",
    // quadrature / solver
    "omegaMax", "autoOmegaMax", "quadRelTol", "quadAbsTol", "maxPanels",
    "sSubstitution", "timeNodes", "tailSafety", "odeRelTol", "odeAbsTol",
    // simulation
    "paths", "stepsPerInterval", "seed", "antithetic", "eq5LiteralJump", "threads",
    // command options
    "mc", "continuous", "dumpPath", "sweepParam", "sweepGrid", "sweepParam2",
    "sweepGrid2", "pvOrders", "pvLevels", "pvBaseSteps"};

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
    return v.get<double>();
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key: " + key);

        if (key == "r") cfg.params.r = as_number(value, key);
        else if (key == "d") cfg.params.d = as_number(value, key);
        else if (key == "V0") cfg.params.V0 = as_number(value, key);
        else if (key == "lambda0") cfg.params.lambda0 = as_number(value, key);
        else if (key == "kappaV") cfg.params.kappaV = as_number(value, key);
        else if (key == "thetaV") cfg.params.thetaV = as_number(value, key);
        else if (key == "sigmaV") cfg.params.sigmaV = as_number(value, key);
        else if (key == "kappaL") cfg.params.kappaL = as_number(value, key);
        else if (key == "thetaL") cfg.params.thetaL = as_number(value, key);
        else if (key == "sigmaL") cfg.params.sigmaL = as_number(value, key);
        else if (key == "rho") cfg.params.rho = as_number(value, key);
        else if (key == "jump") {
            const std::string kind = value.get<std::string>();
            if (kind == "none") cfg.spec.kind = JumpSpec::Kind::None;
            else if (kind == "double_exponential")
                cfg.spec.kind = JumpSpec::Kind::DoubleExponential;
            else if (kind == "gaussian_exponential")
                cfg.spec.kind = JumpSpec::Kind::GaussianExponential;
            else throw ConfigError("jump must be one of none, double_exponential, "
                                   "gaussian_exponential");
        }
        else if (key == "p") cfg.spec.p = as_number(value, key);
        else if (key == "eta1") cfg.spec.eta1 = as_number(value, key);
        else if (key == "eta2") cfg.spec.eta2 = as_number(value, key);
        else if (key == "pPrime") cfg.spec.pPrime = as_number(value, key);
        else if (key == "eta3") cfg.spec.eta3 = as_number(value, key);
        else if (key == "eta4") cfg.spec.eta4 = as_number(value, key);
        else if (key == "nu") cfg.spec.nu = as_number(value, key);
        else if (key == "delta") cfg.spec.delta = as_number(value, key);
        else if (key == "rhoJ") cfg.spec.rhoJ = as_number(value, key);
        else if (key == "eta") cfg.spec.eta = as_number(value, key);
        else if (key == "paperLiteralTransform")
            cfg.spec.paper_literal_transform = value.get<bool>();
        else if (key == "T") cfg.contract.T = as_number(value, key);
        else if (key == "N") cfg.contract.N = value.get<int>();
        else if (key == "notional") cfg.contract.notional = as_number(value, key);
        else if (key == "volPointsScale")
            cfg.contract.vol_points_scale = as_number(value, key);
        else if (key == "omegaMax") cfg.quad.omega_max = as_number(value, key);
        else if (key == "autoOmegaMax") cfg.quad.auto_omega_max = value.get<bool>();
        else if (key == "quadRelTol") cfg.quad.rel_tol = as_number(value, key);
        else if (key == "quadAbsTol") cfg.quad.abs_tol = as_number(value, key);
        else if (key == "maxPanels") cfg.quad.max_panels = value.get<int>();
        else if (key == "sSubstitution") cfg.quad.s_substitution = value.get<bool>();
        else if (key == "timeNodes") cfg.quad.time_nodes = value.get<int>();
        else if (key == "tailSafety") cfg.quad.tail_safety = as_number(value, key);
        else if (key == "odeRelTol") cfg.quad.ode.rel_tol = as_number(value, key);
        else if (key == "odeAbsTol") cfg.quad.ode.abs_tol = as_number(value, key);
        else if (key == "paths") cfg.sim.paths = value.get<long>();
        else if (key == "stepsPerInterval") cfg.sim.steps_per_interval = value.get<int>();
        else if (key == "seed") cfg.sim.seed = value.get<uint64_t>();
        else if (key == "antithetic") cfg.sim.antithetic = value.get<bool>();
        else if (key == "eq5LiteralJump") cfg.sim.eq5_literal_jump = value.get<bool>();
        else if (key == "threads") cfg.sim.threads = value.get<int>();
        else if (key == "mc") cfg.with_mc = value.get<bool>();
        else if (key == "continuous") cfg.with_continuous = value.get<bool>();
        else if (key == "dumpPath") cfg.dump_path = value.get<std::string>();
        else if (key == "sweepParam") cfg.sweep_param = value.get<std::string>();
        else if (key == "sweepGrid") cfg.sweep_grid = value.get<std::vector<double>>();
        else if (key == "sweepParam2") cfg.sweep_param2 = value.get<std::string>();
        else if (key == "sweepGrid2") cfg.sweep_grid2 = value.get<std::vector<double>>();
        else if (key == "pvOrders") cfg.pv_orders = value.get<std::vector<double>>();
        else if (key == "pvLevels") cfg.pv_levels = value.get<int>();
        else if (key == "pvBaseSteps") cfg.pv_base_steps = value.get<int>();
    }
    return cfg;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << contents;
}

void apply_axis(RunConfig& cfg, const std::string& name, double value) {
    if (name == "p") cfg.spec.p = value;
    else if (name == "pPrime") cfg.spec.pPrime = value;
    else if (name == "eta1") cfg.spec.eta1 = value;
    else if (name == "eta2") cfg.spec.eta2 = value;
    else if (name == "eta3") cfg.spec.eta3 = value;
    else if (name == "eta4") cfg.spec.eta4 = value;
    else if (name == "kappaL") cfg.params.kappaL = value;
    else if (name == "thetaL") cfg.params.thetaL = value;
    else if (name == "sigmaL") cfg.params.sigmaL = value;
    else if (name == "N") {
        const int n = static_cast<int>(std::lround(value));
        if (n < 1 || std::abs(value - n) > 1e-9)
            throw ConfigError("sweep over N needs positive integers");
        cfg.contract.N = n;
    }
    else if (name == "T") cfg.contract.T = value;
    else throw ConfigError("unsupported sweep axis: " + name +
                           " (one of p, pPrime, eta1..eta4, kappaL, thetaL, sigmaL, N, T)");
}

McStrike run_mc_strike(const RunConfig& cfg) {
    const PathBatch batch = simulate(cfg.params, cfg.spec, cfg.contract, cfg.sim);
    return mc_strike_rv(batch, cfg.contract);
}

int cmd_price(const RunConfig& cfg, const std::string& out_path, bool quiet) {
    for (const std::string& w : validate(cfg.params))
        std::cerr << "warning: " << w << "\n";

    const StrikeResult disc = discrete_strike(cfg.params, cfg.spec, cfg.contract, cfg.quad);
    const StrikeResult cont = continuous_strike(cfg.params, cfg.spec, cfg.contract, cfg.quad);
    std::optional<McStrike> mc;
    if (cfg.with_mc) mc = run_mc_strike(cfg);

    if (!quiet) {
        std::printf("discrete strike    %12.6f\n", disc.strike);
        std::printf("continuous strike  %12.6f\n", cont.strike);
        if (mc)
            std::printf("mc strike (rv)     %12.6f +/- %.6f   [paths=%ld, seed=%llu]\n",
                        mc->estimate, mc->standard_error, mc->paths,
                        static_cast<unsigned long long>(cfg.sim.seed));
    }
    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "discrete,continuous,mc,mc_se,paths,seed\n";
        csv << fmt(disc.strike) << "," << fmt(cont.strike) << ",";
        if (mc) csv << fmt(mc->estimate) << "," << fmt(mc->standard_error) << ","
                    << mc->paths;
        else csv << ",,";
        csv << "," << cfg.sim.seed << "\n";
        write_file(out_path, csv.str());
    }
    return 0;
}

int cmd_sweep(RunConfig cfg, const std::string& out_path, bool quiet) {
    if (cfg.sweep_param.empty() || cfg.sweep_grid.empty())
        throw ConfigError("sweep needs sweepParam and a non-empty sweepGrid");

    std::ostringstream csv;
    if (!cfg.sweep_param2.empty()) {
        if (cfg.sweep_grid2.empty())
            throw ConfigError("sweepParam2 given but sweepGrid2 is empty");
        // matrix layout: rows = first axis, columns = second axis
        csv << cfg.sweep_param << "/" << cfg.sweep_param2;
        for (double v2 : cfg.sweep_grid2) csv << "," << fmt(v2);
        csv << "\n";
        for (double v1 : cfg.sweep_grid) {
            csv << fmt(v1);
            for (double v2 : cfg.sweep_grid2) {
                RunConfig point = cfg;
                apply_axis(point, cfg.sweep_param, v1);
                apply_axis(point, cfg.sweep_param2, v2);
                const StrikeResult r =
                    discrete_strike(point.params, point.spec, point.contract, point.quad);
                csv << "," << fmt(r.strike);
                if (!quiet)
                    std::printf("%s=%g %s=%g  discrete=%.6f\n", cfg.sweep_param.c_str(),
                                v1, cfg.sweep_param2.c_str(), v2, r.strike);
            }
            csv << "\n";
        }
    } else {
        csv << cfg.sweep_param << ",discrete";
        if (cfg.with_continuous) csv << ",continuous";
        if (cfg.with_mc) csv << ",mc,mc_se";
        csv << "\n";
        for (double v : cfg.sweep_grid) {
            RunConfig point = cfg;
            apply_axis(point, cfg.sweep_param, v);
            const StrikeResult disc =
                discrete_strike(point.params, point.spec, point.contract, point.quad);
            csv << fmt(v) << "," << fmt(disc.strike);
            if (cfg.with_continuous) {
                const StrikeResult cont = continuous_strike(point.params, point.spec,
                                                            point.contract, point.quad);
                csv << "," << fmt(cont.strike);
            }
            if (cfg.with_mc) {
                const McStrike mc = run_mc_strike(point);
                csv << "," << fmt(mc.estimate) << "," << fmt(mc.standard_error);
            }
            csv << "\n";
            if (!quiet)
                std::printf("%s=%g  discrete=%.6f\n", cfg.sweep_param.c_str(), v,
                            disc.strike);
        }
    }
    if (!out_path.empty()) write_file(out_path, csv.str());
    return 0;
}

int cmd_mc(const RunConfig& cfg, const std::string& out_path, bool quiet) {
    const PathBatch batch = simulate(cfg.params, cfg.spec, cfg.contract, cfg.sim);
    const McStrike rv = mc_strike_rv(batch, cfg.contract);
    const McStrike rvstar = mc_strike_rvstar(batch, cfg.contract);

    if (!quiet) {
        std::printf("mc strike (rv)     %12.6f +/- %.6f\n", rv.estimate, rv.standard_error);
        std::printf("mc strike (rv*)    %12.6f +/- %.6f\n", rvstar.estimate,
                    rvstar.standard_error);
        std::printf("paths %ld, seed %llu\n", batch.paths,
                    static_cast<unsigned long long>(batch.seed));
    }
    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "rv,rv_se,rvstar,rvstar_se,paths,seed\n"
            << fmt(rv.estimate) << "," << fmt(rv.standard_error) << ","
            << fmt(rvstar.estimate) << "," << fmt(rvstar.standard_error) << ","
            << batch.paths << "," << batch.seed << "\n";
        write_file(out_path, csv.str());
    }
    if (!cfg.dump_path.empty()) {
        std::ofstream dump(cfg.dump_path, std::ios::binary);
        if (!dump) throw ConfigError("cannot open dump file: " + cfg.dump_path);
        dump_paths_csv(batch, cfg.contract, dump);
    }
    return 0;
}

int cmd_powervar(const RunConfig& cfg, const std::string& out_path, bool quiet) {
    if (cfg.pv_levels < 1) throw ConfigError("pvLevels must be >= 1");
    if (cfg.pv_base_steps < 1) throw ConfigError("pvBaseSteps must be >= 1");

    std::ostringstream csv;
    csv << "u,steps_per_interval,mean_estimate,mean_reference,mean_abs_rel_err\n";
    for (int level = 0; level < cfg.pv_levels; ++level) {
        SimConfig sim = cfg.sim;
        sim.steps_per_interval = cfg.pv_base_steps;
        for (int l = 0; l < level; ++l) sim.steps_per_interval *= 4;
        sim.powervar_orders = cfg.pv_orders;
        const PathBatch batch = simulate(cfg.params, cfg.spec, cfg.contract, sim);
        for (double u : cfg.pv_orders) {
            const PowerVariation pv = power_variation(batch, u);
            double est = 0, ref = 0, err = 0;
            for (size_t p = 0; p < pv.estimate.size(); ++p) {
                est += pv.estimate[p];
                ref += pv.reference[p];
                err += std::abs(pv.estimate[p] - pv.reference[p]) /
                       std::max(pv.reference[p], 1e-300);
            }
            const double n = static_cast<double>(pv.estimate.size());
            csv << fmt(u) << "," << sim.steps_per_interval << "," << fmt(est / n) << ","
                << fmt(ref / n) << "," << fmt(err / n) << "\n";
            if (!quiet)
                std::printf("u=%.2f steps=%d  mean_est=%.6f mean_ref=%.6f "
                            "mean_abs_rel_err=%.6f\n",
                            u, sim.steps_per_interval, est / n, ref / n, err / n);
        }
    }
    if (!out_path.empty()) write_file(out_path, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volatility swap pricing engine"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    bool quiet = false;
    std::optional<uint64_t> seed_override;
    std::optional<long> paths_override;

    app.add_option("--config", config_path, "flat JSON config file")->required();
    app.add_option("--out", out_path, "CSV output path");
    app.add_option("--seed", seed_override, "override config seed");
    app.add_option("--paths", paths_override, "override config path count");
    app.add_flag("--quiet", quiet, "suppress the stdout summary");

    CLI::App* price = app.add_subcommand("price", "analytic + optional MC strikes");
    CLI::App* sweep = app.add_subcommand("sweep", "strike over a parameter grid");
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo strike estimates");
    CLI::App* powervar = app.add_subcommand("powervar", "power-variation convergence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (seed_override) cfg.sim.seed = *seed_override;
        if (paths_override) cfg.sim.paths = *paths_override;

        if (price->parsed()) return cmd_price(cfg, out_path, quiet);
        if (sweep->parsed()) return cmd_sweep(cfg, out_path, quiet);
        if (mc->parsed()) return cmd_mc(cfg, out_path, quiet);
        if (powervar->parsed()) return cmd_powervar(cfg, out_path, quiet);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "ConfigError: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "DomainError: " << e.what() << "\n";
        return 3;
    } catch (const AdmissibilityError& e) {
        std::cerr << "AdmissibilityError: " << e.what() << "\n";
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "SolverError: " << e.what() << "\n";
        return 3;
    } catch (const QuadratureError& e) {
        std::cerr << "QuadratureError: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
