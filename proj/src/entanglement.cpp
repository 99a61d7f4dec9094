#include "ecslab/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace ecslab {

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    for (double& v : values_) {
        if (v < -1e-10 || v > 1.0 + 1e-10)
            throw std::invalid_argument("spectrum entry " + std::to_string(v) +
                                        " outside [0,1] beyond tolerance");
        v = std::clamp(v, 0.0, 1.0);
    }
    std::sort(values_.rbegin(), values_.rend());
}

double entropy(const Spectrum& spec) {
    double e = 0.0;
    for (double lam : spec.values())
        if (lam > 0.0) e -= lam * std::log2(lam);
    return e;
}

double entanglement_of(const CoherentSuperposition& s, const std::vector<int>& keep) {
    if (keep.empty() || static_cast<int>(keep.size()) >= s.n_modes())
        throw std::invalid_argument("bipartition must leave both sides nonempty");
    CoherentSuperposition unit = normalize(s);
    return entropy(Spectrum(reduced_density(unit, keep).eigenvalues()));
}

Spectrum g_state_eigenvalues(Complex alpha) {
    double c = std::exp(-2.0 * std::norm(alpha));
    double denom = 2.0 + 2.0 * c * c;
    return Spectrum({(1.0 + c) * (1.0 + c) / denom, (1.0 - c) * (1.0 - c) / denom});
}

double squeezed_entanglement(double r) {
    if (r < 0.0) throw std::invalid_argument("squeezing parameter must be nonnegative");
    if (r == 0.0) return 0.0;
    double ch2 = std::cosh(r) * std::cosh(r);
    double sh2 = std::sinh(r) * std::sinh(r);
    return ch2 * std::log2(ch2) - sh2 * std::log2(sh2);
}

double state_fidelity(const NonorthogonalDensity& rho, const CoherentSuperposition& s) {
    if (rho.n_modes() != s.n_modes())
        throw std::invalid_argument("density and state mode counts differ");
    const auto n = static_cast<Eigen::Index>(rho.n_kets());
    // <S|ket_i> for each density ket.
    Eigen::VectorXcd proj(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex sum(0.0, 0.0);
        for (const auto& t : s.terms()) {
            Complex prod = std::conj(t.coeff);
            for (int m = 0; m < s.n_modes(); ++m) prod *= overlap(t.amps[m], rho.kets()[i][m]);
            sum += prod;
        }
        proj(i) = sum;
    }
    return (proj.transpose() * rho.coeffs() * proj.conjugate())(0).real();
}

}  // namespace ecslab
