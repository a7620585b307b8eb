#pragma once

#include <functional>
#include <vector>

namespace volswap {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0; // sum of per-panel |K15 - G7| estimates
    double last_panel = 0.0;     // integral over the rightmost panel
    long evaluations = 0;        // integrand evaluations
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Starts from the given interior
// breakpoints (plus a, b) and bisects the worst panel until the summed error
// estimate drops below max(abs_tol, rel_tol*|I|) or max_panels is reached.
// Deterministic: ties broken by panel position, final sum in position order.
QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                  double a, double b,
                                  double rel_tol, double abs_tol, int max_panels,
                                  const std::vector<double>& interior_breakpoints = {});

// Geometric breakpoints {first, 2*first, 4*first, ...} strictly inside (a, b);
// the usual panel layout for semi-infinite integrands that decay past a scale.
std::vector<double> geometric_breakpoints(double a, double b, double first);

struct GaussLegendreRule {
    std::vector<double> nodes;   // in (a, b)
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(int n, double a, double b);

} // namespace volswap
