#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ecslab/common.hpp"

namespace ecslab {

// One product ket coeff * |amps[0], amps[1], ...> of single-mode coherent states.
struct CoherentTerm {
    Complex coeff;
    std::vector<Complex> amps;
};

// Finite superposition of multi-mode coherent product kets.
//
// Values are immutable after construction; every operation below is a pure
// function returning a new state, so concurrent use is safe.  Terms whose
// amplitudes agree within kAmpMergeTol per mode are merged at construction,
// which keeps Gram matrices of derived densities well conditioned.
class CoherentSuperposition {
public:
    CoherentSuperposition(int n_modes, std::vector<CoherentTerm> terms);

    int n_modes() const { return n_modes_; }
    const std::vector<CoherentTerm>& terms() const { return terms_; }
    std::size_t n_terms() const { return terms_.size(); }

    // <S|S>; the imaginary residue of the underlying inner product is checked
    // to be below 1e-12 relative.
    double norm_sq() const;

private:
    int n_modes_;
    std::vector<CoherentTerm> terms_;
};

// Single-mode overlap <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
Complex overlap(Complex a, Complex b);

// <n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!), computed by recurrence so
// that the amplitudes for -alpha are exact sign flips of those for alpha.
Complex coherent_fock_amplitude(Complex alpha, int n);
std::vector<Complex> coherent_fock_amplitudes(Complex alpha, int n_max);

// Sesquilinear <S1|S2> (conjugate-linear in the first argument).
Complex inner_product(const CoherentSuperposition& s1, const CoherentSuperposition& s2);

// Unit-norm copy; throws NormTooSmall when <S|S> <= kNormFloor.
CoherentSuperposition normalize(const CoherentSuperposition& s);

// Product state of a (modes first) and b (modes appended).
CoherentSuperposition tensor(const CoherentSuperposition& a, const CoherentSuperposition& b);

// (eps_plus |alpha> + eps_minus |-alpha>) / sqrt(N0).
CoherentSuperposition make_cat(Complex alpha, Complex eps_plus, Complex eps_minus);

// Two-mode (|alpha,alpha> - |-alpha,-alpha>) / sqrt(2 - 2 exp(-4|alpha|^2)).
CoherentSuperposition make_H(Complex alpha);

// Two-mode (|alpha,alpha> + |-alpha,-alpha>) / sqrt(2 + 2 exp(-4|alpha|^2)).
CoherentSuperposition make_G(Complex alpha);

// (|a,b> - exp(i Gamma)|g,d>) / sqrt(N), Gamma = Im(b conj(d) + a conj(g)),
// requiring |a-g| = |b-d| (= 2 alpha0); throws ConstraintViolated otherwise.
CoherentSuperposition make_family_state(Complex a, Complex b, Complex g, Complex d);

// D(beta) on one mode: amp -> amp + beta, coeff *= exp(i Im(beta conj(amp))).
CoherentSuperposition displace(const CoherentSuperposition& s, int mode, Complex beta);

// amp -> exp(i theta) amp on one mode.
CoherentSuperposition phase_rotate(const CoherentSuperposition& s, int mode, double theta);

// 50/50 splitter (x, y) -> ((x+y)/sqrt2, (x-y)/sqrt2) on a pair of modes.
CoherentSuperposition beam_splitter(const CoherentSuperposition& s, int mode_i, int mode_j);

// Photon loss: amp -> sqrt(eta) amp in `mode`, environment mode appended at the
// end carrying sqrt(1-eta) amp.  Norm preserving for all eta in [0,1].
CoherentSuperposition loss_channel(const CoherentSuperposition& s, int mode, double eta);

struct FockProjection {
    CoherentSuperposition remaining;  // mode removed, left unnormalized
    double norm_sq;                   // outcome probability for unit-norm input
};

// Project `mode` onto the photon-number state |n> and drop the mode.
FockProjection project_fock(const CoherentSuperposition& s, int mode, int n);

// <S| sum_m a_m^dag a_m |S> / <S|S>.
double photon_number_expectation(const CoherentSuperposition& s);

// Matrix of pairwise ket overlaps; entry (i,j) = <ket_i|ket_j>.
struct GramMatrix {
    Eigen::MatrixXcd entries;

    static GramMatrix of(const std::vector<std::vector<Complex>>& kets);
    double min_eigenvalue() const;
};

// Density operator sum_ij coeffs(i,j) |ket_i><ket_j| over nonorthogonal
// coherent product kets, carried together with their Gram matrix.
class NonorthogonalDensity {
public:
    NonorthogonalDensity(std::vector<std::vector<Complex>> kets, Eigen::MatrixXcd coeffs);

    int n_modes() const { return kets_.empty() ? 0 : static_cast<int>(kets_[0].size()); }
    std::size_t n_kets() const { return kets_.size(); }
    const std::vector<std::vector<Complex>>& kets() const { return kets_; }
    const Eigen::MatrixXcd& coeffs() const { return coeffs_; }
    const GramMatrix& gram() const { return gram_; }

    // tr rho = Re tr(coeffs * gram).
    double trace() const;

    // Copy scaled to unit trace; throws NormTooSmall for trace <= kNormFloor.
    NonorthogonalDensity normalized() const;

    // Spectrum of the operator, descending.  Solved as the ordinary Hermitian
    // eigenproblem of L C L with gram = L L (symmetric square root, Gram
    // eigenvalues below 1e-12 clipped to zero).
    std::vector<double> eigenvalues() const;

private:
    std::vector<std::vector<Complex>> kets_;
    Eigen::MatrixXcd coeffs_;
    GramMatrix gram_;
};

// Partial trace of |S><S| keeping the given modes (nonempty, strictly
// ascending).  Trace of the result equals <S|S>.
NonorthogonalDensity reduced_density(const CoherentSuperposition& s, const std::vector<int>& keep);

}  // namespace ecslab
