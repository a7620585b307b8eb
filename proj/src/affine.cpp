#include "volswap/affine.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace volswap {

namespace {

constexpr double kTiny = 1e-300;

using State = std::array<Cplx, 2>; // (D, E)

State operator+(const State& x, const State& y) { return {x[0] + y[0], x[1] + y[1]}; }
State operator*(double s, const State& x) { return {s * x[0], s * x[1]}; }

} // namespace

RiccatiC::RiccatiC(const ModelParams& params, Cplx omega, Cplx phi) : phi_(phi) {
    a_ = 0.5 * params.sigmaV * params.sigmaV;
    b_ = params.rho * params.sigmaV * omega - params.kappaV;
    c_ = 0.5 * (omega * omega - omega);

    if (a_ == 0.0) {
        // dC/dtau = b C + c, b has real part -kappaV < 0
        form_ = Form::Linear;
        return;
    }
    d_ = std::sqrt(b_ * b_ - 4.0 * a_ * c_); // principal root: Re(d) >= 0
    const double scale = std::abs(b_) + std::abs(d_);
    if (std::abs(d_) <= 1e-14 * std::max(scale, 1.0)) {
        form_ = Form::DoubleRoot;
        root_minus_ = -b_ / (2.0 * a_);
        return;
    }
    root_minus_ = (-b_ - d_) / (2.0 * a_); // stable fixed point
    root_plus_ = (-b_ + d_) / (2.0 * a_);
    if (std::abs(phi - root_minus_) < kTiny) {
        form_ = Form::Constant;
        return;
    }
    form_ = Form::General;
    g_ = (phi - root_plus_) / (phi - root_minus_);
}

Cplx RiccatiC::operator()(double tau) const {
    if (tau == 0.0) return phi_; // initial condition, bit-exact
    switch (form_) {
    case Form::Constant:
        return root_minus_;
    case Form::Linear: {
        // c_/b_ finite since Re(b) = -kappaV != 0
        const Cplx ratio = c_ / b_;
        return (phi_ + ratio) * std::exp(b_ * tau) - ratio;
    }
    case Form::DoubleRoot: {
        const Cplx w = phi_ - root_minus_;
        const Cplx denom = 1.0 - a_ * w * tau;
        if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(a_ * w * tau)))
            throw SolverError("Riccati pole: C(tau) diverges (moment explosion)");
        return root_minus_ + w / denom;
    }
    case Form::General: {
        const Cplx decay = std::exp(-d_ * tau);
        const Cplx denom = decay - g_;
        if (std::abs(denom) < 1e-14 * std::max(std::abs(decay), std::abs(g_)))
            throw SolverError("Riccati pole: C(tau) diverges (moment explosion)");
        return (root_plus_ * decay - g_ * root_minus_) / denom;
    }
    }
    return phi_;
}

namespace {

struct AffineRhs {
    const ModelParams& params;
    const JumpSpec& spec;
    Cplx omega;
    const RiccatiC& riccati;
    double half_sigmaL2;
    Cplx drift_term;
    Cplx m_omega; // m * omega, hoisted out of the jump term

    AffineRhs(const ModelParams& p, const JumpSpec& s, Cplx om, const RiccatiC& rc)
        : params(p), spec(s), omega(om), riccati(rc) {
        half_sigmaL2 = 0.5 * p.sigmaL * p.sigmaL;
        drift_term = (p.r - p.d) * om;
        m_omega = (s.kind == JumpSpec::Kind::None) ? 0.0 : mean_price_jump(s) * om;
    }

    Cplx jump_term(Cplx C) const {
        if (spec.kind == JumpSpec::Kind::None) return 0.0;
        if (spec.paper_literal_transform && spec.kind == JumpSpec::Kind::DoubleExponential)
            return big_lambda(spec, omega, C);
        if (!jump_transform_admissible(spec, omega, C))
            throw AdmissibilityError("C(tau) left the jump-transform strip during integration");
        return -m_omega + joint_jump_transform(spec, omega, C) - 1.0;
    }

    State operator()(double tau, const State& y) const {
        const Cplx C = riccati(tau);
        const Cplx D = y[0];
        return State{half_sigmaL2 * D * D - params.kappaL * D + jump_term(C),
                     drift_term + params.kappaV * params.thetaV * C +
                         params.kappaL * params.thetaL * D};
    }
};

double scaled_error_norm(const State& err, const State& y0, const State& y1,
                         double atol, double rtol) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double e = std::abs(err[i]) / sc;
        sum += e * e;
    }
    return std::sqrt(0.5 * sum);
}

double norm_over_scale(const State& v, const State& ref, double atol, double rtol) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double sc = atol + rtol * std::abs(ref[i]);
        const double e = std::abs(v[i]) / sc;
        sum += e * e;
    }
    return std::sqrt(0.5 * sum);
}

// Dormand-Prince 5(4) with FSAL and the standard step controller.
class Dopri5 {
public:
    Dopri5(const AffineRhs& rhs, const OdeOptions& opts) : f_(rhs), opts_(opts) {}

    // integrate from (t, y) to t_end, invoking on_accept(t_new, y_new) after
    // each accepted step
    template <class Callback>
    void integrate(double& t, State& y, double t_end, SolverDiagnostics& diag,
                   Callback&& on_accept) {
        if (t_end <= t) return;
        State k1 = f_(t, y);
        double h = initial_step(t, y, k1, t_end - t);
        bool just_rejected = false;

        while (t < t_end) {
            if (diag.steps + diag.rejected > opts_.max_steps)
                throw SolverError("affine ODE solver exceeded max step count");
            h = std::min(h, t_end - t);
            if (h <= std::abs(t) * 1e-15 + 1e-300)
                throw SolverError("affine ODE step size underflow");

            const State k2 = f_(t + c2 * h, y + (h * a21) * k1);
            const State k3 = f_(t + c3 * h, y + (h * a31) * k1 + (h * a32) * k2);
            const State k4 = f_(t + c4 * h, y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
            const State k5 = f_(t + c5 * h,
                                y + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 + (h * a54) * k4);
            const State k6 = f_(t + h, y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                           (h * a64) * k4 + (h * a65) * k5);
            const State y5 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 +
                             (h * b5) * k5 + (h * b6) * k6;
            const State k7 = f_(t + h, y5);
            const State err = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 +
                              (h * e5) * k5 + (h * e6) * k6 + (h * e7) * k7;

            const double err_norm = scaled_error_norm(err, y, y5, opts_.abs_tol, opts_.rel_tol);
            if (err_norm <= 1.0) {
                t += h;
                y = y5;
                k1 = k7; // FSAL
                ++diag.steps;
                diag.max_local_error = std::max(diag.max_local_error, err_norm);
                on_accept(t, y);
                const double fac = std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2),
                                              0.2, just_rejected ? 1.0 : 5.0);
                h *= fac;
                just_rejected = false;
            } else {
                ++diag.rejected;
                h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 0.9);
                just_rejected = true;
            }
        }
    }

private:
    double initial_step(double t, const State& y, const State& f0, double span) const {
        const double d0 = norm_over_scale(y, y, opts_.abs_tol, opts_.rel_tol);
        const double d1 = norm_over_scale(f0, y, opts_.abs_tol, opts_.rel_tol);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        const State y1 = y + h0 * f0;
        const State f1 = f_(t + h0, y1);
        const State df{f1[0] - f0[0], f1[1] - f0[1]};
        const double d2 = norm_over_scale(df, y, opts_.abs_tol, opts_.rel_tol) / h0;
        double h1;
        if (std::max(d1, d2) <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        return std::min({100.0 * h0, h1, span});
    }

    const AffineRhs& f_;
    OdeOptions opts_;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

void check_admissible(const JumpSpec& spec, Cplx omega, Cplx C, double tau) {
    if (spec.paper_literal_transform && spec.kind == JumpSpec::Kind::DoubleExponential)
        return; // the printed power form is entire in C
    if (!jump_transform_admissible(spec, omega, C))
        throw AdmissibilityError("C(tau) left the jump-transform strip at tau = " +
                                 std::to_string(tau));
}

} // namespace

AffineCoefficients solve_affine(const ModelParams& params, const JumpSpec& spec,
                                const FrequencyArgument& q, double tau,
                                const OdeOptions& opts) {
    const double taus[1] = {tau};
    return solve_affine_grid(params, spec, q, taus, opts).front();
}

std::vector<AffineCoefficients> solve_affine_grid(const ModelParams& params,
                                                  const JumpSpec& spec,
                                                  const FrequencyArgument& q,
                                                  std::span<const double> taus,
                                                  const OdeOptions& opts) {
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] < 0.0) throw ConfigError("tau must be >= 0");
        if (i > 0 && taus[i] < taus[i - 1])
            throw ConfigError("tau grid must be ascending");
    }

    const RiccatiC riccati(params, q.omega, q.phi);
    check_admissible(spec, q.omega, q.phi, 0.0);

    const AffineRhs rhs(params, spec, q.omega, riccati);
    Dopri5 solver(rhs, opts);

    std::vector<AffineCoefficients> out(taus.size());
    double t = 0.0;
    State y{q.psi, q.chi};
    SolverDiagnostics diag;

    auto step_check = [&](double t_new, const State&) {
        check_admissible(spec, q.omega, riccati(t_new), t_new);
    };

    for (size_t i = 0; i < taus.size(); ++i) {
        solver.integrate(t, y, taus[i], diag, step_check);
        AffineCoefficients& coef = out[i];
        coef.tau = taus[i];
        coef.C = riccati(taus[i]);
        coef.D = y[0];
        coef.E = y[1];
        coef.diag = diag;
    }
    return out;
}

} // namespace volswap
