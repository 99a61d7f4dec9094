#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ecslab/coherent.hpp"
#include "ecslab/common.hpp"

namespace ecslab {

// Truncated number-basis vector over n_modes, each mode cut at `cutoff`
// photons.  Flat index layout: mode 0 is the slowest digit, the last mode the
// fastest.  Serves as the brute-force cross-check representation; none of the
// routines here reuse the coherent-superposition inner-product or
// partial-trace code paths.
struct FockVector {
    int n_modes = 0;
    int cutoff = 0;
    Eigen::VectorXcd amps;
    // 1 - <v|v> for conversions of unit-norm states; >= 0.
    double truncation_loss = 0.0;

    std::int64_t dim() const { return amps.size(); }
    std::int64_t stride(int mode) const;
};

// Dense density matrix over the kept modes' truncated basis.
struct FockDensity {
    int n_modes = 0;
    int cutoff = 0;
    Eigen::MatrixXcd matrix;
};

// Expand every coherent ket of S in the photon-number basis.
FockVector to_fock(const CoherentSuperposition& s, int cutoff);

// <v1|v2> with the usual orthonormal-basis sum.
Complex fock_inner(const FockVector& v1, const FockVector& v2);

// Partial trace of |v><v| keeping the given modes (nonempty, ascending).
FockDensity fock_partial_trace(const FockVector& v, const std::vector<int>& keep);

std::vector<double> fock_density_eigenvalues(const FockDensity& rho);  // descending

// <psi|rho|psi>.
double fock_density_fidelity(const FockDensity& rho, const FockVector& psi);

// Upper bound on the Poisson tail sum_{n>cutoff} e^-lam lam^n / n!,
// monotonically decreasing in cutoff.
double poisson_tail(double amp_sq, int cutoff);

// ceil(lam + 8 sqrt(lam) + 10) with lam the largest per-mode |amp|^2 of S;
// keeps the Poisson tail below ~1e-10 for |amp| <= 3.
int default_cutoff(const CoherentSuperposition& s);

// ---- Fock-side pipeline pieces used by the oracle checks ----

// Photon loss as an explicit isometry: |n> -> sum_j sqrt(C(n,j) eta^(n-j)
// (1-eta)^j) |n-j>|j>_env with the environment mode appended at the end.
FockVector fock_loss_channel(const FockVector& v, int mode, double eta);

// 50/50 beam splitter on two modes in the convention that maps coherent
// amplitudes (x, y) -> ((x+y)/sqrt2, (x-y)/sqrt2).
FockVector fock_beam_splitter(const FockVector& v, int mode_i, int mode_j);

// Project `mode` onto |n> and drop the mode; second member is the squared
// norm of the projected slice (= outcome probability for unit-norm input).
struct FockProjectionResult {
    FockVector remaining;
    double norm_sq;
};
FockProjectionResult fock_project(const FockVector& v, int mode, int n);

// <v| sum_m n_m |v> / <v|v>.
double fock_mean_photons(const FockVector& v);

}  // namespace ecslab
