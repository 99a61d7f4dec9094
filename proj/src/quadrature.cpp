#include "ecslab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecslab {

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        // Newton iteration on P_n from the Chebyshev-based initial guess.
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - i] = rule.weights[i - 1];
    }
    return rule;
}

double sphere_average(const std::function<double(const QubitPoint&)>& f,
                      const SphereQuadrature& quad) {
    if (quad.n_theta < 1 || quad.n_phi < 1) throw std::invalid_argument("empty quadrature");
    GaussLegendreRule rule = gauss_legendre(quad.n_theta);
    double sum = 0.0;
    for (int i = 0; i < quad.n_theta; ++i) {
        double theta = std::acos(rule.nodes[i]);
        double inner = 0.0;
        for (int j = 0; j < quad.n_phi; ++j) {
            double phi = 2.0 * std::numbers::pi * j / quad.n_phi;
            inner += f(QubitPoint{theta, phi});
        }
        sum += rule.weights[i] * inner;
    }
    return sum / (2.0 * quad.n_phi);
}

}  // namespace ecslab
