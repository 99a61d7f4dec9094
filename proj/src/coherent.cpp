#include "ecslab/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace ecslab {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ECSLAB_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return 0xEC51ABull;
}

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Merge terms whose per-mode amplitudes agree within kAmpMergeTol; terms whose
// coefficient cancels exactly are dropped.
std::vector<CoherentTerm> dedup_terms(std::vector<CoherentTerm> terms) {
    std::vector<CoherentTerm> out;
    for (auto& t : terms) {
        bool merged = false;
        for (auto& u : out) {
            bool same = true;
            for (std::size_t m = 0; m < t.amps.size(); ++m) {
                if (std::abs(t.amps[m] - u.amps[m]) > kAmpMergeTol) {
                    same = false;
                    break;
                }
            }
            if (same) {
                u.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(t));
    }
    std::erase_if(out, [](const CoherentTerm& t) { return t.coeff == Complex(0.0, 0.0); });
    return out;
}

void check_mode(const CoherentSuperposition& s, int mode) {
    if (mode < 0 || mode >= s.n_modes())
        throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range for " +
                                    std::to_string(s.n_modes()) + "-mode state");
}

}  // namespace

CoherentSuperposition::CoherentSuperposition(int n_modes, std::vector<CoherentTerm> terms)
    : n_modes_(n_modes) {
    if (n_modes < 0) throw std::invalid_argument("negative mode count");
    for (const auto& t : terms) {
        if (static_cast<int>(t.amps.size()) != n_modes)
            throw std::invalid_argument("term amplitude count does not match mode count");
        if (!is_finite(t.coeff)) throw std::invalid_argument("non-finite term coefficient");
        for (Complex a : t.amps)
            if (!is_finite(a)) throw std::invalid_argument("non-finite coherent amplitude");
    }
    terms_ = dedup_terms(std::move(terms));
}

double CoherentSuperposition::norm_sq() const {
    Complex ip = inner_product(*this, *this);
    if (std::abs(ip.imag()) > 1e-12 * std::max(1.0, std::abs(ip.real())))
        throw std::logic_error("squared norm has imaginary residue " +
                               std::to_string(ip.imag()));
    return ip.real();
}

Complex overlap(Complex a, Complex b) {
    return std::exp(Complex(-0.5 * std::norm(a) - 0.5 * std::norm(b), 0.0) + std::conj(a) * b);
}

std::vector<Complex> coherent_fock_amplitudes(Complex alpha, int n_max) {
    std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = Complex(std::exp(-0.5 * std::norm(alpha)), 0.0);
    for (int n = 1; n <= n_max; ++n) out[n] = out[n - 1] * alpha / std::sqrt(double(n));
    return out;
}

Complex coherent_fock_amplitude(Complex alpha, int n) {
    if (n < 0) throw std::invalid_argument("negative photon number");
    Complex a(std::exp(-0.5 * std::norm(alpha)), 0.0);
    for (int k = 1; k <= n; ++k) a *= alpha / std::sqrt(double(k));
    return a;
}

Complex inner_product(const CoherentSuperposition& s1, const CoherentSuperposition& s2) {
    if (s1.n_modes() != s2.n_modes())
        throw std::invalid_argument("inner product between states with different mode counts");
    Complex sum(0.0, 0.0);
    for (const auto& a : s1.terms()) {
        for (const auto& b : s2.terms()) {
            Complex prod = std::conj(a.coeff) * b.coeff;
            for (int m = 0; m < s1.n_modes(); ++m) prod *= overlap(a.amps[m], b.amps[m]);
            sum += prod;
        }
    }
    return sum;
}

CoherentSuperposition normalize(const CoherentSuperposition& s) {
    double ns = s.norm_sq();
    if (!(ns > kNormFloor))
        throw NormTooSmall("cannot normalize state with squared norm " + std::to_string(ns));
    double scale = 1.0 / std::sqrt(ns);
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) t.coeff *= scale;
    return CoherentSuperposition(s.n_modes(), std::move(terms));
}

CoherentSuperposition tensor(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    std::vector<CoherentTerm> terms;
    terms.reserve(a.n_terms() * b.n_terms());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            CoherentTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.amps = ta.amps;
            t.amps.insert(t.amps.end(), tb.amps.begin(), tb.amps.end());
            terms.push_back(std::move(t));
        }
    }
    return CoherentSuperposition(a.n_modes() + b.n_modes(), std::move(terms));
}

CoherentSuperposition make_cat(Complex alpha, Complex eps_plus, Complex eps_minus) {
    std::vector<CoherentTerm> terms;
    terms.push_back({eps_plus, {alpha}});
    terms.push_back({eps_minus, {-alpha}});
    return normalize(CoherentSuperposition(1, std::move(terms)));
}

CoherentSuperposition make_H(Complex alpha) {
    std::vector<CoherentTerm> terms;
    terms.push_back({Complex(1.0, 0.0), {alpha, alpha}});
    terms.push_back({Complex(-1.0, 0.0), {-alpha, -alpha}});
    return normalize(CoherentSuperposition(2, std::move(terms)));
}

CoherentSuperposition make_G(Complex alpha) {
    std::vector<CoherentTerm> terms;
    terms.push_back({Complex(1.0, 0.0), {alpha, alpha}});
    terms.push_back({Complex(1.0, 0.0), {-alpha, -alpha}});
    return normalize(CoherentSuperposition(2, std::move(terms)));
}

CoherentSuperposition make_family_state(Complex a, Complex b, Complex g, Complex d) {
    double lhs = std::abs(a - g);
    double rhs = std::abs(b - d);
    if (std::abs(lhs - rhs) > 1e-9)
        throw ConstraintViolated("family state requires |a-g| = |b-d|; got " + std::to_string(lhs) +
                                 " vs " + std::to_string(rhs));
    double gamma = std::imag(b * std::conj(d) + a * std::conj(g));
    std::vector<CoherentTerm> terms;
    terms.push_back({Complex(1.0, 0.0), {a, b}});
    terms.push_back({-std::exp(Complex(0.0, gamma)), {g, d}});
    return normalize(CoherentSuperposition(2, std::move(terms)));
}

CoherentSuperposition displace(const CoherentSuperposition& s, int mode, Complex beta) {
    check_mode(s, mode);
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) {
        double phase = std::imag(beta * std::conj(t.amps[mode]));
        t.coeff *= std::exp(Complex(0.0, phase));
        t.amps[mode] += beta;
    }
    return CoherentSuperposition(s.n_modes(), std::move(terms));
}

CoherentSuperposition phase_rotate(const CoherentSuperposition& s, int mode, double theta) {
    check_mode(s, mode);
    Complex rot = std::exp(Complex(0.0, theta));
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) t.amps[mode] *= rot;
    return CoherentSuperposition(s.n_modes(), std::move(terms));
}

CoherentSuperposition beam_splitter(const CoherentSuperposition& s, int mode_i, int mode_j) {
    check_mode(s, mode_i);
    check_mode(s, mode_j);
    if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) {
        Complex x = t.amps[mode_i];
        Complex y = t.amps[mode_j];
        t.amps[mode_i] = (x + y) * inv_sqrt2;
        t.amps[mode_j] = (x - y) * inv_sqrt2;
    }
    return CoherentSuperposition(s.n_modes(), std::move(terms));
}

CoherentSuperposition loss_channel(const CoherentSuperposition& s, int mode, double eta) {
    check_mode(s, mode);
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("loss parameter outside [0,1]");
    double t_sig = std::sqrt(eta);
    double t_env = std::sqrt(1.0 - eta);
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) {
        Complex x = t.amps[mode];
        t.amps[mode] = t_sig * x;
        t.amps.push_back(t_env * x);
    }
    return CoherentSuperposition(s.n_modes() + 1, std::move(terms));
}

FockProjection project_fock(const CoherentSuperposition& s, int mode, int n) {
    check_mode(s, mode);
    if (n < 0) throw std::invalid_argument("negative photon number");
    std::vector<CoherentTerm> terms;
    terms.reserve(s.n_terms());
    for (const auto& t : s.terms()) {
        CoherentTerm u;
        u.coeff = t.coeff * coherent_fock_amplitude(t.amps[mode], n);
        u.amps = t.amps;
        u.amps.erase(u.amps.begin() + mode);
        terms.push_back(std::move(u));
    }
    CoherentSuperposition remaining(s.n_modes() - 1, std::move(terms));
    double p = remaining.norm_sq();
    return {std::move(remaining), p};
}

double photon_number_expectation(const CoherentSuperposition& s) {
    Complex num(0.0, 0.0);
    for (const auto& a : s.terms()) {
        for (const auto& b : s.terms()) {
            Complex prod = std::conj(a.coeff) * b.coeff;
            Complex occupancy(0.0, 0.0);
            for (int m = 0; m < s.n_modes(); ++m) {
                prod *= overlap(a.amps[m], b.amps[m]);
                occupancy += std::conj(a.amps[m]) * b.amps[m];
            }
            num += prod * occupancy;
        }
    }
    double ns = s.norm_sq();
    if (!(ns > kNormFloor)) throw NormTooSmall("photon number expectation of a null state");
    return num.real() / ns;
}

GramMatrix GramMatrix::of(const std::vector<std::vector<Complex>>& kets) {
    const auto n = static_cast<Eigen::Index>(kets.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex prod(1.0, 0.0);
            for (std::size_t m = 0; m < kets[i].size(); ++m)
                prod *= overlap(kets[i][m], kets[j][m]);
            g(i, j) = prod;
        }
    }
    return GramMatrix{std::move(g)};
}

double GramMatrix::min_eigenvalue() const {
    if (entries.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

NonorthogonalDensity::NonorthogonalDensity(std::vector<std::vector<Complex>> kets,
                                           Eigen::MatrixXcd coeffs)
    : kets_(std::move(kets)), coeffs_(std::move(coeffs)), gram_(GramMatrix::of(kets_)) {
    const auto n = static_cast<Eigen::Index>(kets_.size());
    if (coeffs_.rows() != n || coeffs_.cols() != n)
        throw std::invalid_argument("coefficient matrix does not match ket count");
    for (std::size_t i = 1; i < kets_.size(); ++i)
        if (kets_[i].size() != kets_[0].size())
            throw std::invalid_argument("kets have inconsistent mode counts");
    double scale = std::max(coeffs_.cwiseAbs().maxCoeff(), 1e-300);
    if ((coeffs_ - coeffs_.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument("coefficient matrix is not Hermitian");
    coeffs_ = 0.5 * (coeffs_ + coeffs_.adjoint().eval());
}

double NonorthogonalDensity::trace() const {
    return (coeffs_ * gram_.entries).trace().real();
}

NonorthogonalDensity NonorthogonalDensity::normalized() const {
    double tr = trace();
    if (!(tr > kNormFloor)) throw NormTooSmall("density trace " + std::to_string(tr));
    return NonorthogonalDensity(kets_, coeffs_ / tr);
}

std::vector<double> NonorthogonalDensity::eigenvalues() const {
    if (kets_.empty()) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram_.entries);
    Eigen::VectorXd d = gs.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) > 1e-12 ? std::sqrt(d(i)) : 0.0;
    Eigen::MatrixXcd root = gs.eigenvectors() * d.asDiagonal() * gs.eigenvectors().adjoint();
    Eigen::MatrixXcd m = root * coeffs_ * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

NonorthogonalDensity reduced_density(const CoherentSuperposition& s, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("cannot trace out every mode");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= s.n_modes())
            throw std::invalid_argument("kept mode index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("kept modes must be strictly ascending");
    }
    std::vector<int> traced;
    for (int m = 0; m < s.n_modes(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);

    // Group terms by their kept-mode amplitudes so shared kets collapse to one
    // Gram row.
    std::vector<std::vector<Complex>> kets;
    std::vector<std::size_t> ket_of_term(s.n_terms());
    for (std::size_t t = 0; t < s.n_terms(); ++t) {
        std::vector<Complex> kept(keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k) kept[k] = s.terms()[t].amps[keep[k]];
        std::size_t found = kets.size();
        for (std::size_t i = 0; i < kets.size(); ++i) {
            bool same = true;
            for (std::size_t k = 0; k < kept.size(); ++k)
                if (std::abs(kept[k] - kets[i][k]) > kAmpMergeTol) {
                    same = false;
                    break;
                }
            if (same) {
                found = i;
                break;
            }
        }
        if (found == kets.size()) kets.push_back(std::move(kept));
        ket_of_term[t] = found;
    }

    const auto n = static_cast<Eigen::Index>(kets.size());
    Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t a = 0; a < s.n_terms(); ++a) {
        for (std::size_t b = 0; b < s.n_terms(); ++b) {
            Complex w = s.terms()[a].coeff * std::conj(s.terms()[b].coeff);
            for (int m : traced) w *= overlap(s.terms()[b].amps[m], s.terms()[a].amps[m]);
            coeffs(static_cast<Eigen::Index>(ket_of_term[a]),
                   static_cast<Eigen::Index>(ket_of_term[b])) += w;
        }
    }
    return NonorthogonalDensity(std::move(kets), std::move(coeffs));
}

}  // namespace ecslab
