#include "volswap/mgf.hpp"

#include <bit>
#include <cmath>

namespace volswap {

Cplx mgf_joint(const ModelParams& params, const JumpSpec& spec,
               const FrequencyArgument& q, double tau,
               double x, double v, double lambda, const OdeOptions& opts) {
    if (v < 0.0) throw ConfigError("v must be >= 0");
    if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
    const AffineCoefficients coef = solve_affine(params, spec, q, tau, opts);
    return std::exp(q.omega * x + coef.C * v + coef.D * lambda + coef.E);
}

Cplx mgf_marginal_variance(const ModelParams& params, const JumpSpec& spec,
                           Cplx s, double tau, const OdeOptions& opts) {
    FrequencyArgument q;
    q.phi = -s;
    return mgf_joint(params, spec, q, tau, 0.0, params.V0, params.lambda0, opts);
}

Cplx increment_cf(const ModelParams& params, const JumpSpec& spec,
                  Cplx omega, int i, double dt, const OdeOptions& opts) {
    if (i < 1) throw ConfigError("sampling index i must be >= 1");
    if (dt <= 0.0) throw ConfigError("dt must be > 0");

    FrequencyArgument q1;
    q1.omega = omega;
    const AffineCoefficients inner = solve_affine(params, spec, q1, dt, opts);

    FrequencyArgument q2;
    q2.phi = inner.C;
    q2.psi = inner.D;
    q2.chi = inner.E;
    const AffineCoefficients outer =
        (i == 1) ? AffineCoefficients{0.0, inner.C, inner.D, inner.E, inner.diag}
                 : solve_affine(params, spec, q2, (i - 1) * dt, opts);
    return std::exp(outer.C * params.V0 + outer.D * params.lambda0 + outer.E);
}

size_t IncrementCfTable::KeyHash::operator()(const std::pair<double, double>& k) const noexcept {
    const uint64_t a = std::bit_cast<uint64_t>(k.first);
    const uint64_t b = std::bit_cast<uint64_t>(k.second);
    uint64_t h = a * 0x9E3779B97F4A7C15ull;
    h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
}

IncrementCfTable::IncrementCfTable(const ModelParams& params, const JumpSpec& spec,
                                   double dt, int n_intervals, const OdeOptions& opts)
    : params_(params), spec_(spec), dt_(dt), n_(n_intervals), opts_(opts) {
    if (n_ < 1) throw ConfigError("IncrementCfTable: need at least one interval");
    if (dt_ <= 0.0) throw ConfigError("IncrementCfTable: dt must be > 0");
    stage2_taus_.resize(n_);
    for (int i = 0; i < n_; ++i) stage2_taus_[i] = i * dt_;
}

const std::vector<Cplx>& IncrementCfTable::row(Cplx z) {
    const auto key = std::make_pair(z.real(), z.imag());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    FrequencyArgument q1;
    q1.omega = z;
    const AffineCoefficients inner = solve_affine(params_, spec_, q1, dt_, opts_);
    ++solves_;

    FrequencyArgument q2;
    q2.phi = inner.C;
    q2.psi = inner.D;
    q2.chi = inner.E;
    const std::vector<AffineCoefficients> outer =
        solve_affine_grid(params_, spec_, q2, stage2_taus_, opts_);
    ++solves_;

    std::vector<Cplx> values(n_);
    for (int i = 0; i < n_; ++i)
        values[i] = std::exp(outer[i].C * params_.V0 + outer[i].D * params_.lambda0 +
                             outer[i].E);
    return cache_.emplace(key, std::move(values)).first->second;
}

VarianceLaplaceTable::VarianceLaplaceTable(const ModelParams& params, const JumpSpec& spec,
                                           std::vector<double> times, const OdeOptions& opts)
    : params_(params), spec_(spec), times_(std::move(times)), opts_(opts) {
    if (times_.empty()) throw ConfigError("VarianceLaplaceTable: empty time grid");
}

const std::vector<double>& VarianceLaplaceTable::row(double s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;

    FrequencyArgument q;
    q.phi = -s;
    const std::vector<AffineCoefficients> coefs =
        solve_affine_grid(params_, spec_, q, times_, opts_);
    ++solves_;

    std::vector<double> values(times_.size());
    for (size_t i = 0; i < times_.size(); ++i) {
        const Cplx u = coefs[i].C * params_.V0 + coefs[i].D * params_.lambda0 + coefs[i].E;
        values[i] = u.real(); // real Laplace argument: exponent is real
    }
    return cache_.emplace(s, std::move(values)).first->second;
}

} // namespace volswap
