#include "ecslab/teleportation.hpp"

#include <cmath>
#include <numbers>

#include "ecslab/entanglement.hpp"
#include "ecslab/fock.hpp"

namespace ecslab {

namespace {

double n_cat(double c_alpha, Complex ep, Complex em, double sign) {
    return std::norm(ep) + std::norm(em) +
           sign * 2.0 * c_alpha * std::real(std::conj(em) * ep);
}

CoherentSuperposition build_resource(Complex alpha, Resource res) {
    return res == Resource::H ? make_H(alpha) : make_G(alpha);
}

// Fidelity of an unnormalized Bob(+environment) branch of squared norm p
// against the target cat, environments traced by overlap.
double branch_fidelity(const CoherentSuperposition& branch, double p,
                       const CoherentSuperposition& target) {
    if (!(p > 1e-280)) return 0.0;
    return state_fidelity(reduced_density(branch, {0}), target) / p;
}

CoherentSuperposition scaled_copy(const CoherentSuperposition& s, double factor) {
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) t.coeff *= factor;
    return CoherentSuperposition(s.n_modes(), std::move(terms));
}

}  // namespace

int default_n_cap(Complex alpha) {
    double lam = 2.0 * std::norm(alpha);
    for (int n = 1; n < 200; ++n)
        if (poisson_tail(lam, n) < 1e-10) return n;
    return 200;
}

double p_odd_noiseless() { return 0.5; }

NoisyCollapse noisy_collapse(const CatInput& input, double eta, bool odd_branch) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta outside [0,1]");
    Complex atil = std::sqrt(eta) * input.alpha;
    double c_atil = std::exp(-2.0 * std::norm(atil));
    NoisyCollapse nc;
    nc.k_amp = std::sqrt(1.0 - eta) * input.alpha;
    nc.c_k = std::exp(-4.0 * (1.0 - eta) * std::norm(input.alpha));
    double parity_sign = odd_branch ? 1.0 : -1.0;  // -(-1)^n for the H resource
    nc.n_k = std::norm(input.eps_plus) + std::norm(input.eps_minus) +
             parity_sign * 2.0 * c_atil * nc.c_k *
                 std::real(std::conj(input.eps_minus) * input.eps_plus);
    nc.a_coef = std::norm(input.eps_plus) +
                std::conj(input.eps_minus) * input.eps_plus * c_atil;
    nc.b_coef = std::norm(input.eps_minus) +
                std::conj(input.eps_plus) * input.eps_minus * c_atil;
    return nc;
}

double p_odd_noisy(const CatInput& input, double eta) {
    NoisyCollapse nc = noisy_collapse(input, eta, true);
    Complex atil = std::sqrt(eta) * input.alpha;
    double c_atil = std::exp(-2.0 * std::norm(atil));
    double n0_til = n_cat(c_atil, input.eps_plus, input.eps_minus, 1.0);
    if (!(n0_til > kNormFloor)) throw NormTooSmall("degenerate input cat");
    double n_atil = 2.0 - 2.0 * std::exp(-4.0 * std::norm(atil));
    double n_alpha = 2.0 - 2.0 * std::exp(-4.0 * std::norm(input.alpha));
    return 0.5 * nc.n_k * n_atil / (n0_til * n_alpha);
}

double fidelity_noisy(const CatInput& input, double eta) {
    NoisyCollapse nc = noisy_collapse(input, eta, true);
    Complex atil = std::sqrt(eta) * input.alpha;
    double c_atil = std::exp(-2.0 * std::norm(atil));
    double n0_til = n_cat(c_atil, input.eps_plus, input.eps_minus, 1.0);
    if (!(n0_til > kNormFloor && nc.n_k > kNormFloor))
        throw NormTooSmall("degenerate input cat");
    double cross = 2.0 * std::real(nc.a_coef * std::conj(nc.b_coef));
    return (std::norm(nc.a_coef) + std::norm(nc.b_coef) + nc.c_k * cross) / (n0_til * nc.n_k);
}

std::pair<CoherentSuperposition, double> collapse_state(Resource resource, int n,
                                                        const CatInput& input, double eta) {
    if (n < 1) throw std::invalid_argument("collapse requires a nonzero count");
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta outside [0,1]");
    Complex atil = std::sqrt(eta) * input.alpha;
    Complex k = std::sqrt(1.0 - eta) * input.alpha;
    double res_sign = resource == Resource::H ? -1.0 : 1.0;
    double sign = res_sign * (n % 2 == 0 ? 1.0 : -1.0);  // -+(-1)^n

    std::vector<CoherentTerm> terms;
    if (eta < 1.0) {
        terms.push_back({input.eps_plus, {atil, k, k}});
        terms.push_back({sign * input.eps_minus, {-atil, -k, -k}});
    } else {
        terms.push_back({input.eps_plus, {atil}});
        terms.push_back({sign * input.eps_minus, {-atil}});
    }
    CoherentSuperposition raw(eta < 1.0 ? 3 : 1, std::move(terms));

    double c_atil = std::exp(-2.0 * std::norm(atil));
    double c_k = std::exp(-4.0 * (1.0 - eta) * std::norm(input.alpha));
    double n_norm = std::norm(input.eps_plus) + std::norm(input.eps_minus) +
                    sign * 2.0 * c_atil * c_k *
                        std::real(std::conj(input.eps_minus) * input.eps_plus);
    if (!(n_norm > kNormFloor)) throw NormTooSmall("degenerate collapse state");
    return {scaled_copy(raw, 1.0 / std::sqrt(n_norm)), n_norm};
}

ProtocolRun run_protocol(const CatInput& input, Resource resource, double eta, int n_cap) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta outside [0,1]");
    if (n_cap < 1) throw std::invalid_argument("n_cap must be at least 1");

    Complex atil = std::sqrt(eta) * input.alpha;
    CoherentSuperposition input_cat = make_cat(atil, input.eps_plus, input.eps_minus);
    CoherentSuperposition joint = tensor(input_cat, build_resource(input.alpha, resource));
    if (eta < 1.0) {
        joint = loss_channel(joint, 1, eta);
        joint = loss_channel(joint, 2, eta);
    }
    joint = beam_splitter(joint, 0, 1);

    ProtocolRun run;
    auto emit = [&](int n, int m) {
        FockProjection first = project_fock(joint, 0, n);
        FockProjection second = project_fock(first.remaining, 0, m);
        ProtocolOutcome out;
        out.n = n;
        out.m = m;
        out.probability = second.norm_sq;
        bool mode1_branch = m > 0;
        CoherentSuperposition bob = second.remaining;
        if (mode1_branch) bob = phase_rotate(bob, 0, std::numbers::pi);
        out.fidelity = branch_fidelity(bob, second.norm_sq, input_cat);
        out.bob_state = second.norm_sq > 1e-280
                            ? scaled_copy(bob, 1.0 / std::sqrt(second.norm_sq))
                            : bob;
        int count = std::max(n, m);
        bool odd = count % 2 == 1;
        out.success = count > 0 && (resource == Resource::H ? odd : !odd);
        run.probability_sum += out.probability;
        if (out.success) run.success_probability += out.probability;
        run.outcomes.push_back(std::move(out));
    };

    emit(0, 0);
    for (int n = 1; n <= n_cap; ++n) {
        emit(n, 0);
        emit(0, n);
    }

    // Counts above n_cap: each counted mode holds amplitudes of one magnitude,
    // so the missed mass per mode is bounded by (sum |coeff|)^2 times the
    // Poisson tail at that magnitude.
    double tail = 0.0;
    for (int mode = 0; mode < 2; ++mode) {
        double coeff_sum = 0.0;
        double lam = 0.0;
        for (const auto& t : joint.terms()) {
            if (std::abs(t.amps[mode]) > kAmpMergeTol) {
                coeff_sum += std::abs(t.coeff);
                lam = std::max(lam, std::norm(t.amps[mode]));
            }
        }
        tail += coeff_sum * coeff_sum * poisson_tail(lam, n_cap);
    }
    run.tail_bound = tail;
    run.tail_ok = tail <= 1e-9;
    return run;
}

std::pair<Complex, Complex> qubit_to_cat(const QubitPoint& q, Complex alpha) {
    double c = std::exp(-2.0 * std::norm(alpha));
    double inv_np = 1.0 / std::sqrt(2.0 + 2.0 * c);
    double inv_nm = 1.0 / std::sqrt(2.0 - 2.0 * c);
    double s_half = std::sin(0.5 * q.theta);
    Complex c_half = std::cos(0.5 * q.theta) * std::exp(Complex(0.0, q.phi));
    return {s_half * inv_np + c_half * inv_nm, s_half * inv_np - c_half * inv_nm};
}

double mean_photons_qubit(const QubitPoint& q, Complex alpha) {
    double c = std::exp(-2.0 * std::norm(alpha));
    double np = 2.0 + 2.0 * c;
    double nm = 2.0 - 2.0 * c;
    double s2 = std::sin(0.5 * q.theta) * std::sin(0.5 * q.theta);
    return std::norm(alpha) * (s2 * nm / np + (1.0 - s2) * np / nm);
}

double p_even_closed_form(Complex alpha) {
    double c = std::exp(-2.0 * std::norm(alpha));
    return (1.0 - c) * (1.0 - c) / (2.0 + 2.0 * c * c);
}

SweepTable fig2_table(const std::vector<double>& alphas, const std::vector<double>& etas,
                      bool weighted, const SphereQuadrature& quad) {
    if (alphas.empty() || etas.empty()) throw std::invalid_argument("empty sweep grid");
    SweepTable table;
    table.columns = {"alpha", "eta", "avg_fidelity", "avg_p_odd"};
    for (double eta : etas) {
        for (double alpha : alphas) {
            Complex atil = std::sqrt(eta) * alpha;
            auto input_at = [&](const QubitPoint& q) {
                auto [ep, em] = qubit_to_cat(q, atil);
                return CatInput{ep, em, Complex(alpha, 0.0)};
            };
            double avg_p = sphere_average(
                [&](const QubitPoint& q) { return p_odd_noisy(input_at(q), eta); }, quad);
            double avg_f;
            if (weighted) {
                double fp = sphere_average(
                    [&](const QubitPoint& q) {
                        CatInput in = input_at(q);
                        return fidelity_noisy(in, eta) * p_odd_noisy(in, eta);
                    },
                    quad);
                avg_f = fp / avg_p;
            } else {
                avg_f = sphere_average(
                    [&](const QubitPoint& q) { return fidelity_noisy(input_at(q), eta); }, quad);
            }
            table.rows.push_back({alpha, eta, avg_f, avg_p});
        }
    }
    return table;
}

SweepTable fig3_table(const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("empty sweep grid");
    SweepTable table;
    table.columns = {"alpha", "p_even", "entanglement"};
    for (double alpha : alphas) {
        table.rows.push_back({alpha, p_even_closed_form(alpha),
                              entropy(g_state_eigenvalues(alpha))});
    }
    return table;
}

std::vector<double> fig2_default_alphas() {
    std::vector<double> out;
    for (int i = 1; i <= 40; ++i) out.push_back(0.1 * i);
    return out;
}

std::vector<double> fig2_default_etas() { return {0.9, 0.7, 0.5, 0.3, 0.1}; }

std::vector<double> fig3_default_alphas() {
    std::vector<double> out(150);
    for (int i = 0; i < 150; ++i) out[i] = 0.02 + (3.0 - 0.02) * i / 149.0;
    return out;
}

}  // namespace ecslab
