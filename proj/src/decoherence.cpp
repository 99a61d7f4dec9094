#include "ecslab/decoherence.hpp"

#include <cmath>

#include "ecslab/entanglement.hpp"

namespace ecslab {

namespace {

// Pull (first ket, second ket, Gamma) out of a normalized two-term family
// state; the relative phase of the coefficients carries -exp(i Gamma).
struct FamilyShape {
    Complex a, b, g, d;
    double gamma;
    double alpha0;
};

FamilyShape family_shape(const CoherentSuperposition& s) {
    if (s.n_modes() != 2 || s.n_terms() != 2)
        throw std::invalid_argument("expected a two-mode, two-term family state");
    const auto& t0 = s.terms()[0];
    const auto& t1 = s.terms()[1];
    if (std::abs(std::abs(t0.coeff) - std::abs(t1.coeff)) > 1e-9)
        throw std::invalid_argument("family state must weight both kets equally");
    FamilyShape f;
    f.a = t0.amps[0];
    f.b = t0.amps[1];
    f.g = t1.amps[0];
    f.d = t1.amps[1];
    double lhs = std::abs(f.a - f.g);
    double rhs = std::abs(f.b - f.d);
    if (std::abs(lhs - rhs) > 1e-9)
        throw ConstraintViolated("state does not satisfy the family amplitude constraint");
    f.alpha0 = 0.5 * lhs;
    f.gamma = std::arg(-t1.coeff / t0.coeff);
    return f;
}

}  // namespace

DecoheredPair propagate(const CoherentSuperposition& family_state, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta outside [0,1]");
    FamilyShape f = family_shape(family_state);
    CoherentSuperposition unit = normalize(family_state);
    CoherentSuperposition lossy = loss_channel(loss_channel(unit, 0, eta), 1, eta);
    NonorthogonalDensity rho = reduced_density(lossy, {0, 1}).normalized();

    double r = std::sqrt(1.0 - eta);
    Complex env = overlap(r * f.g, r * f.a) * overlap(r * f.d, r * f.b);
    Complex s_factor = std::exp(Complex(0.0, -f.gamma)) * env;
    return DecoheredPair{std::move(rho), s_factor, eta, f.alpha0};
}

double fidelity_closed_form(double alpha0, double eta) {
    if (alpha0 < 0.0) throw std::invalid_argument("alpha0 must be nonnegative");
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta outside [0,1]");
    if (alpha0 == 0.0) return eta;
    double a2 = 4.0 * alpha0 * alpha0;
    double num = -std::expm1(-eta * a2) * (1.0 + std::exp(-(1.0 - eta) * a2));
    double den = -2.0 * std::expm1(-a2);
    return num / den;
}

double fidelity_numeric(const DecoheredPair& pair) {
    if (pair.alpha0 < 1e-4)
        throw std::invalid_argument("alpha0 below 1e-4; the numeric overlap is ill-conditioned, "
                                    "use the closed form");
    if (pair.rho.n_kets() != 2)
        throw NormTooSmall("decohered kets merged; scaled target is degenerate");
    const auto& k = pair.rho.kets();
    CoherentSuperposition target = make_family_state(k[0][0], k[0][1], k[1][0], k[1][1]);
    return state_fidelity(pair.rho, target);
}

SweepTable fig1_sweep(const std::vector<double>& etas, const std::vector<double>& alpha0s) {
    if (etas.empty() || alpha0s.empty()) throw std::invalid_argument("empty sweep grid");
    SweepTable table;
    table.columns = {"alpha0", "eta", "fidelity"};
    for (double eta : etas)
        for (double a0 : alpha0s)
            table.rows.push_back({a0, eta, fidelity_closed_form(a0, eta)});
    return table;
}

std::vector<double> fig1_default_etas() { return {0.9, 0.7, 0.5, 0.3, 0.1}; }

std::vector<double> fig1_default_alpha0_grid() {
    std::vector<double> grid(150);
    const double lo = 0.01, hi = 3.0;
    for (int i = 0; i < 150; ++i) grid[i] = lo * std::pow(hi / lo, i / 149.0);
    return grid;
}

}  // namespace ecslab
