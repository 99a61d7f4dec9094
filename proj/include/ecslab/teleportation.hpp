#pragma once

#include <vector>

#include "ecslab/coherent.hpp"
#include "ecslab/quadrature.hpp"
#include "ecslab/sweep.hpp"

namespace ecslab {

enum class Resource { H, G };

// Qubit (eps_plus |a~> + eps_minus |-a~>) to teleport across a resource built
// at amplitude `alpha`; a~ = sqrt(eta) alpha in the lossy protocol.
struct CatInput {
    Complex eps_plus;
    Complex eps_minus;
    Complex alpha;
};

// One photon-counting record: n counts in mode 0, m in mode 1.  At most one of
// n, m is nonzero for every outcome with nonzero probability.
struct ProtocolOutcome {
    int n = 0;
    int m = 0;
    double probability = 0.0;
    // Bob's mode (plus the two environment modes when eta < 1), normalized,
    // with the unitary sign-flip correction already applied on the mode-1
    // branch.  Left unnormalized when the branch probability underflows.
    CoherentSuperposition bob_state{1, {}};
    double fidelity = 0.0;
    bool success = false;
};

struct ProtocolRun {
    std::vector<ProtocolOutcome> outcomes;
    double probability_sum = 0.0;    // over the enumerated outcomes
    double tail_bound = 0.0;         // Poisson certificate for counts > n_cap
    double success_probability = 0.0;
    bool tail_ok = true;             // tail_bound <= 1e-9
};

// Mix the input cat with one half of the resource on a 50/50 splitter, count
// photons in modes 0 and 1, and collapse Bob's mode; outcomes (0,0), (n,0) and
// (0,m) for 1 <= n,m <= n_cap.  Success parity is odd for the H resource and
// nonzero even for the G resource.
ProtocolRun run_protocol(const CatInput& input, Resource resource, double eta, int n_cap);

// Smallest n with poisson_tail(2|alpha|^2, n) < 1e-10, capped at 200.
int default_n_cap(Complex alpha);

// Success probability of the noiseless H protocol, independent of the input.
double p_odd_noiseless();

// Closed-form ingredients of the noisy collapse for the H resource.
struct NoisyCollapse {
    Complex k_amp;   // per-environment-mode amplitude sqrt(1-eta) alpha
    double c_k;      // <-k|k> = exp(-4 (1-eta) |alpha|^2)
    double n_k;      // collapse normalization for the requested parity
    Complex a_coef;  // |e+|^2 + conj(e-) e+ c_atilde
    Complex b_coef;  // |e-|^2 + conj(e+) e- c_atilde
};
NoisyCollapse noisy_collapse(const CatInput& input, double eta, bool odd_branch);

// (1/2) N_k N_atilde / (N0~ N_alpha).
double p_odd_noisy(const CatInput& input, double eta);

// Odd-branch teleportation fidelity
// (|A|^2 + |B|^2 + c_k (A conj(B) + conj(A) B)) / (N0~ N_k).
double fidelity_noisy(const CatInput& input, double eta);

// Bob-plus-environment state after Alice counts n >= 1 photons, together with
// its pre-normalization squared norm.
std::pair<CoherentSuperposition, double> collapse_state(Resource resource, int n,
                                                        const CatInput& input, double eta);

// Coefficients (eps_plus, eps_minus) of sin(t/2)|+> + cos(t/2) e^{i phi} |->
// in the |+-alpha> basis; the resulting cat already has unit norm.
std::pair<Complex, Complex> qubit_to_cat(const QubitPoint& q, Complex alpha);

// sin^2(t/2) |a|^2 N-/N+ + cos^2(t/2) |a|^2 N+/N-.
double mean_photons_qubit(const QubitPoint& q, Complex alpha);

// (1 - c)^2 / (2 + 2 c^2): success probability of the noiseless G protocol.
double p_even_closed_form(Complex alpha);

// Rows (alpha, eta, avg_fidelity, avg_p_odd), sphere-averaged over input
// qubits, ordered by (eta, alpha).  `weighted` weights the fidelity average
// by the per-qubit success probability.
SweepTable fig2_table(const std::vector<double>& alphas, const std::vector<double>& etas,
                      bool weighted = false, const SphereQuadrature& quad = {});

// Rows (alpha, p_even, entanglement of the G state).
SweepTable fig3_table(const std::vector<double>& alphas);

std::vector<double> fig2_default_alphas();  // 0.1 .. 4.0 step 0.1
std::vector<double> fig2_default_etas();    // {0.9, 0.7, 0.5, 0.3, 0.1}
std::vector<double> fig3_default_alphas();  // 150 linear points in [0.02, 3]

}  // namespace ecslab
