#include "stokesopt/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace stokesopt {
namespace {

// Gauss-Legendre nodes and weights on [0,1], by Newton iteration on P_n.
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess on [-1,1].
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute p0 at converged x for the weight formula.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (x + 1.0);
        weights[i] = 0.5 * w;
    }
}

}  // namespace

QuadratureRule QuadratureRule::triangle(int degree) {
    if (degree < 1) degree = 1;
    // Map the unit square onto the triangle by (xi, eta) -> (xi, eta*(1-xi)).
    // The Jacobian (1-xi) raises the xi-degree by one, hence the +2.
    const int m = (degree + 2 + 1) / 2;
    std::vector<double> n1, w1;
    gauss_legendre_unit(m, n1, w1);

    QuadratureRule rule;
    rule.degree = degree;
    rule.points.reserve(static_cast<size_t>(m) * m);
    rule.weights.reserve(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double xi = n1[i];
            const double eta = n1[j];
            rule.points.push_back({xi, eta * (1.0 - xi)});
            rule.weights.push_back(w1[i] * w1[j] * (1.0 - xi));
        }
    }
    return rule;
}

}  // namespace stokesopt
