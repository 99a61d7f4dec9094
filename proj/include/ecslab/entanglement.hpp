#pragma once

#include <vector>

#include "ecslab/coherent.hpp"

namespace ecslab {

// Eigenvalue list of a unit-trace density, stored descending.  Values are
// clipped into [0,1]; anything below -1e-10 or above 1+1e-10 is rejected.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> eigenvalues);
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// Von Neumann entropy -sum lam log2 lam in bits, with 0 log 0 = 0.
double entropy(const Spectrum& spec);

// Entropy of the reduced state of S on `keep`; S is normalized first.
// Both sides of the bipartition must be nonempty.
double entanglement_of(const CoherentSuperposition& s, const std::vector<int>& keep);

// Reduced-state eigenvalues (1 +- c)^2 / (2 + 2 c^2), c = exp(-2|alpha|^2),
// of the two-mode plus-superposition state.
Spectrum g_state_eigenvalues(Complex alpha);

// cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r (two-mode squeezed state).
double squeezed_entanglement(double r);

// <S| rho |S> for a pure target state against a nonorthogonal density.
double state_fidelity(const NonorthogonalDensity& rho, const CoherentSuperposition& s);

}  // namespace ecslab
