#pragma once

#include "ecslab/coherent.hpp"
#include "ecslab/sweep.hpp"

namespace ecslab {

// Two-mode density after symmetric photon loss on both modes of a family
// state, together with the off-diagonal suppression factor.
struct DecoheredPair {
    NonorthogonalDensity rho;  // modes (0,1), unit trace
    Complex s_factor;          // exp(-i Gamma) <env ket 2|env ket 1>
    double eta;
    double alpha0;
};

// Send both modes of a two-mode family state through loss channels with the
// same eta and trace out the environments.
DecoheredPair propagate(const CoherentSuperposition& family_state, double eta);

// [1 - exp(-4 eta a0^2)][1 + exp(-4 (1-eta) a0^2)] / (2 [1 - exp(-4 a0^2)]);
// the removable singularity at alpha0 = 0 evaluates to eta.
double fidelity_closed_form(double alpha0, double eta);

// Overlap of pair.rho with the amplitude-scaled family state rebuilt from the
// surviving kets.  Refuses alpha0 < 1e-4 (use the closed-form limit there).
double fidelity_numeric(const DecoheredPair& pair);

// Rows (alpha0, eta, fidelity) by the closed form, ordered by (eta, alpha0).
SweepTable fig1_sweep(const std::vector<double>& etas, const std::vector<double>& alpha0s);

std::vector<double> fig1_default_etas();         // {0.9, 0.7, 0.5, 0.3, 0.1}
std::vector<double> fig1_default_alpha0_grid();  // 150 log-spaced in [0.01, 3]

}  // namespace ecslab
