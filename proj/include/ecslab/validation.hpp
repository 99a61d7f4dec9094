#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ecslab/coherent.hpp"
#include "ecslab/teleportation.hpp"

namespace ecslab {

enum class CheckStatus { pass, warn, fail };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double worst_delta = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationConfig {
    int cutoff_override = 0;  // 0 selects the per-check defaults
    std::uint64_t seed = 0;   // 0 selects default_seed()
};

// Full oracle-agreement and invariant suite; one result per check.
std::vector<CheckResult> run_validation(const ValidationConfig& config);

bool all_passed(const std::vector<CheckResult>& results);

// Random superposition with 1..max_terms terms over n_modes modes,
// |amp| <= max_amp, normalized.
CoherentSuperposition random_state(std::mt19937_64& rng, int n_modes, int max_terms,
                                   double max_amp);

// Random two-mode family state with the given half-separation alpha0.
CoherentSuperposition random_family_state(std::mt19937_64& rng, double alpha0,
                                          double base_amp = 1.0);

// Photon-counting protocol for the H resource run entirely in the truncated
// number basis: explicit loss isometries, number-basis beam splitter and
// projective counts.  Used to cross-check the closed forms (including the
// inferred environment overlap c_k).
struct FockProtocolResult {
    double p_odd = 0.0;
    double fidelity_odd = 0.0;  // at the smallest odd count
    double truncation_loss = 0.0;
};
FockProtocolResult fock_protocol_oracle(const CatInput& input, double eta, int cutoff,
                                        int n_cap);

}  // namespace ecslab
