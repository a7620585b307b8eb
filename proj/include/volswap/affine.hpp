#pragma once

#include <span>
#include <vector>

#include "volswap/model.hpp"

namespace volswap {

// Exponent quadruple q = (omega, phi, psi, chi) of the joint transform
// E[exp(omega*X_T + phi*V_T + psi*lambda_T + chi)].
struct FrequencyArgument {
    Cplx omega = 0.0;
    Cplx phi = 0.0;
    Cplx psi = 0.0;
    Cplx chi = 0.0;
};

struct SolverDiagnostics {
    int steps = 0;              // accepted steps
    int rejected = 0;
    double max_local_error = 0; // largest accepted scaled error estimate
};

// (C, D, E)(tau) solving the transform ODE system for a given q.
struct AffineCoefficients {
    double tau = 0.0;
    Cplx C = 0.0;
    Cplx D = 0.0;
    Cplx E = 0.0;
    SolverDiagnostics diag;
};

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_steps = 1000000;
};

// Closed-form solution of the C Riccati equation
//   dC/dtau = a C^2 + b C + c,   a = sigmaV^2/2,
//   b = rho*sigmaV*omega - kappaV, c = (omega^2 - omega)/2,  C(0) = phi.
// Evaluated as a rational function of exp(-d*tau) with Re(d) >= 0 (stable
// root in the denominator, no complex logarithm, hence no branch issues).
// A sigmaV = 0 branch handles the linear degenerate case exactly.
class RiccatiC {
public:
    RiccatiC(const ModelParams& params, Cplx omega, Cplx phi);
    Cplx operator()(double tau) const;

private:
    enum class Form { Constant, Linear, DoubleRoot, General };
    Form form_;
    Cplx b_, c_, d_, root_minus_, root_plus_, g_, a_;
    Cplx phi_;
};

// Solves system (C, D, E) up to tau:
//   C: closed form above;
//   dD/dtau = sigmaL^2/2 D^2 - kappaL D + Lambda(omega, C(tau)),  D(0) = psi;
//   dE/dtau = (r - d) omega + kappaV thetaV C + kappaL thetaL D,  E(0) = chi;
// D and E by adaptive Dormand-Prince 5(4). Admissibility of the jump
// transform at (omega, C(tau)) is checked at every accepted step.
AffineCoefficients solve_affine(const ModelParams& params, const JumpSpec& spec,
                                const FrequencyArgument& q, double tau,
                                const OdeOptions& opts = {});

// Same integration, emitting coefficients at each requested tau (ascending,
// tau >= 0). One solver pass serves all horizons; the integrator clamps its
// steps at the requested points so emitted values are exact solver output.
std::vector<AffineCoefficients> solve_affine_grid(const ModelParams& params,
                                                  const JumpSpec& spec,
                                                  const FrequencyArgument& q,
                                                  std::span<const double> taus,
                                                  const OdeOptions& opts = {});

} // namespace volswap
