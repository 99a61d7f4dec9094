#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ecslab {

using Complex = std::complex<double>;

// Squared-norm floor below which a superposition is treated as numerically null.
inline constexpr double kNormFloor = 1e-14;

// Per-mode absolute tolerance for merging coherent terms with equal amplitudes.
inline constexpr double kAmpMergeTol = 1e-12;

// Raised when a state cannot be normalized (squared norm <= kNormFloor).
struct NormTooSmall : std::runtime_error {
    explicit NormTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Raised when constructor arguments violate a structural constraint.
struct ConstraintViolated : std::invalid_argument {
    explicit ConstraintViolated(const std::string& what) : std::invalid_argument(what) {}
};

// Seed for randomized property checks: ECSLAB_SEED if set, else a fixed default.
std::uint64_t default_seed();

}  // namespace ecslab
