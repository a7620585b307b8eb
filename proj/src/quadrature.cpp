#include "volswap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace volswap {

namespace {

// (G7, K15) nodes/weights on [-1, 1]; Kronrod points interleave the Gauss ones.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double integral;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double fsum = f(center - x) + f(center + x);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
    }
    evals += 15;
    Panel p;
    p.a = a;
    p.b = b;
    p.integral = result_kronrod * half;
    p.error = std::abs((result_kronrod - result_gauss) * half);
    return p;
}

} // namespace

std::vector<double> geometric_breakpoints(double a, double b, double first) {
    std::vector<double> pts;
    for (double x = first; x < b; x *= 2.0)
        if (x > a) pts.push_back(x);
    return pts;
}

QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                  double a, double b,
                                  double rel_tol, double abs_tol, int max_panels,
                                  const std::vector<double>& interior_breakpoints) {
    if (!(b > a)) throw std::invalid_argument("adaptive_gauss_kronrod: b must exceed a");

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : interior_breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    QuadResult res;
    std::vector<Panel> panels;
    panels.reserve(edges.size() + 64);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(evaluate_panel(f, edges[i], edges[i + 1], res.evaluations));

    auto worst = [&]() {
        size_t w = 0;
        for (size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[w].error ||
                (panels[i].error == panels[w].error && panels[i].a < panels[w].a))
                w = i;
        }
        return w;
    };

    while (static_cast<int>(panels.size()) < max_panels) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : panels) {
            total += p.integral;
            err += p.error;
        }
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) break;

        const size_t w = worst();
        const Panel split = panels[w];
        const double mid = 0.5 * (split.a + split.b);
        if (mid <= split.a || mid >= split.b) break; // interval width at rounding limit
        panels[w] = evaluate_panel(f, split.a, mid, res.evaluations);
        panels.push_back(evaluate_panel(f, mid, split.b, res.evaluations));
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : panels) {
        res.value += p.integral;
        res.error_estimate += p.error;
    }
    res.last_panel = panels.back().integral;
    return res;
}

GaussLegendreRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        const double w = 2.0 * half / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace volswap
