#pragma once

#include <functional>
#include <vector>

namespace ecslab {

// Gauss-Legendre nodes and weights on (-1, 1).
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

// Point on the Bloch sphere, theta in [0, pi], phi in [0, 2 pi).
struct QubitPoint {
    double theta;
    double phi;
};

struct SphereQuadrature {
    int n_theta = 64;  // Gauss-Legendre nodes in cos(theta)
    int n_phi = 64;    // uniform periodic nodes in phi
};

// Average of f against dp = sin(theta) dtheta dphi / (4 pi).
double sphere_average(const std::function<double(const QubitPoint&)>& f,
                      const SphereQuadrature& quad = {});

}  // namespace ecslab
