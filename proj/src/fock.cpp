#include "ecslab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ecslab {

namespace {

constexpr std::int64_t kMaxDim = std::int64_t(1) << 27;

std::int64_t pow_i64(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > kMaxDim) throw std::invalid_argument("Fock dimension too large");
        r *= base;
    }
    return r;
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

double log_choose(int n, int k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

void check_fock_mode(const FockVector& v, int mode) {
    if (mode < 0 || mode >= v.n_modes) throw std::invalid_argument("Fock mode index out of range");
}

}  // namespace

std::int64_t FockVector::stride(int mode) const {
    return pow_i64(cutoff + 1, n_modes - 1 - mode);
}

FockVector to_fock(const CoherentSuperposition& s, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
    FockVector v;
    v.n_modes = s.n_modes();
    v.cutoff = cutoff;
    std::int64_t dim = pow_i64(cutoff + 1, s.n_modes());
    v.amps = Eigen::VectorXcd::Zero(dim);
    for (const auto& t : s.terms()) {
        // Outer product of per-mode amplitude columns, mode 0 slowest.
        Eigen::VectorXcd acc(1);
        acc(0) = t.coeff;
        for (int m = 0; m < s.n_modes(); ++m) {
            std::vector<Complex> col = coherent_fock_amplitudes(t.amps[m], cutoff);
            Eigen::VectorXcd next(acc.size() * (cutoff + 1));
            for (Eigen::Index i = 0; i < acc.size(); ++i)
                for (int n = 0; n <= cutoff; ++n) next(i * (cutoff + 1) + n) = acc(i) * col[n];
            acc = std::move(next);
        }
        v.amps += acc;
    }
    v.truncation_loss = std::max(0.0, 1.0 - v.amps.squaredNorm());
    return v;
}

Complex fock_inner(const FockVector& v1, const FockVector& v2) {
    if (v1.n_modes != v2.n_modes || v1.cutoff != v2.cutoff)
        throw std::invalid_argument("Fock vectors have mismatched shapes");
    return v1.amps.dot(v2.amps);
}

FockDensity fock_partial_trace(const FockVector& v, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("cannot trace out every mode");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= v.n_modes)
            throw std::invalid_argument("kept mode index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("kept modes must be strictly ascending");
    }
    std::vector<int> traced;
    for (int m = 0; m < v.n_modes; ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);

    const int c1 = v.cutoff + 1;
    std::int64_t dim_keep = pow_i64(c1, static_cast<int>(keep.size()));
    std::int64_t dim_traced = pow_i64(c1, static_cast<int>(traced.size()));

    FockDensity rho;
    rho.n_modes = static_cast<int>(keep.size());
    rho.cutoff = v.cutoff;
    rho.matrix = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);

    auto flat_index = [&](std::int64_t k, std::int64_t t) {
        std::int64_t idx = 0;
        std::int64_t kk = k, tt = t;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            idx += (kk % c1) * v.stride(keep[i]);
            kk /= c1;
        }
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            idx += (tt % c1) * v.stride(traced[i]);
            tt /= c1;
        }
        return idx;
    };

    for (std::int64_t t = 0; t < dim_traced; ++t) {
        for (std::int64_t r = 0; r < dim_keep; ++r) {
            Complex ar = v.amps(flat_index(r, t));
            if (ar == Complex(0.0, 0.0)) continue;
            for (std::int64_t c = 0; c < dim_keep; ++c)
                rho.matrix(r, c) += ar * std::conj(v.amps(flat_index(c, t)));
        }
    }
    return rho;
}

std::vector<double> fock_density_eigenvalues(const FockDensity& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

double fock_density_fidelity(const FockDensity& rho, const FockVector& psi) {
    if (rho.matrix.rows() != psi.dim())
        throw std::invalid_argument("density and state dimensions differ");
    return (psi.amps.adjoint() * rho.matrix * psi.amps)(0).real();
}

double poisson_tail(double amp_sq, int cutoff) {
    if (amp_sq < 0.0) throw std::invalid_argument("negative Poisson mean");
    if (cutoff < 0) throw std::invalid_argument("negative cutoff");
    if (amp_sq == 0.0) return 0.0;
    const double log_lam = std::log(amp_sq);
    double cdf = 0.0;
    for (int n = 0; n <= cutoff; ++n)
        cdf += std::exp(-amp_sq + n * log_lam - log_factorial(n));
    double direct = 1.0 - cdf;
    double bound = 1.0;
    if (amp_sq < cutoff + 2) {
        // Geometric majorant of the remainder, valid once terms decay.
        double first = std::exp(-amp_sq + (cutoff + 1) * log_lam - log_factorial(cutoff + 1));
        bound = std::min(bound, first / (1.0 - amp_sq / (cutoff + 2)));
    }
    if (direct > 1e-12) bound = std::min(bound, direct);
    return std::max(bound, 0.0);
}

int default_cutoff(const CoherentSuperposition& s) {
    double lam = 0.0;
    for (const auto& t : s.terms())
        for (Complex a : t.amps) lam = std::max(lam, std::norm(a));
    return static_cast<int>(std::ceil(lam + 8.0 * std::sqrt(lam) + 10.0));
}

FockVector fock_loss_channel(const FockVector& v, int mode, double eta) {
    check_fock_mode(v, mode);
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("loss parameter outside [0,1]");
    const int c1 = v.cutoff + 1;
    FockVector out;
    out.n_modes = v.n_modes + 1;
    out.cutoff = v.cutoff;
    out.amps = Eigen::VectorXcd::Zero(pow_i64(c1, out.n_modes));
    out.truncation_loss = v.truncation_loss;

    // Amplitude weights sqrt(C(n,j) eta^(n-j) (1-eta)^j); rows sum to 1 in
    // squared magnitude, so the embedding is exactly isometric.
    std::vector<std::vector<double>> w(c1);
    for (int n = 0; n <= v.cutoff; ++n) {
        w[n].resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            double log_w = log_choose(n, j);
            if (n - j > 0) log_w += (n - j) * std::log(eta);
            if (j > 0) log_w += j * std::log(1.0 - eta);
            if ((eta == 0.0 && n - j > 0) || (eta == 1.0 && j > 0))
                w[n][j] = 0.0;
            else
                w[n][j] = std::sqrt(std::exp(log_w));
        }
    }

    const std::int64_t stride_mode = v.stride(mode);
    for (std::int64_t idx = 0; idx < v.dim(); ++idx) {
        Complex a = v.amps(idx);
        if (a == Complex(0.0, 0.0)) continue;
        int n = static_cast<int>((idx / stride_mode) % c1);
        for (int j = 0; j <= n; ++j) {
            if (w[n][j] == 0.0) continue;
            std::int64_t sig = idx - static_cast<std::int64_t>(j) * stride_mode;
            out.amps(sig * c1 + j) += a * w[n][j];
        }
    }
    return out;
}

FockVector fock_beam_splitter(const FockVector& v, int mode_i, int mode_j) {
    check_fock_mode(v, mode_i);
    check_fock_mode(v, mode_j);
    if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
    const int c = v.cutoff;
    const int c1 = c + 1;

    // <p, n+m-p| BS |n, m> from expanding ((a+b)/sqrt2)^n ((a-b)/sqrt2)^m.
    std::vector<double> u(static_cast<std::size_t>(c1) * c1 * c1, 0.0);
    auto uat = [&](int n, int m, int p) -> double& {
        return u[(static_cast<std::size_t>(n) * c1 + m) * c1 + p];
    };
    const double log2v = std::numbers::ln2;
    for (int n = 0; n <= c; ++n) {
        for (int m = 0; m <= c; ++m) {
            for (int p = std::max(0, n + m - c); p <= std::min(c, n + m); ++p) {
                int q = n + m - p;
                double sum = 0.0;
                double log_pref = 0.5 * (log_factorial(p) + log_factorial(q) -
                                         log_factorial(n) - log_factorial(m)) -
                                  0.5 * (n + m) * log2v;
                for (int i = std::max(0, p - m); i <= std::min(n, p); ++i) {
                    int j = p - i;
                    double term = std::exp(log_choose(n, i) + log_choose(m, j) + log_pref);
                    sum += ((m - j) % 2 == 0) ? term : -term;
                }
                uat(n, m, p) = sum;
            }
        }
    }

    FockVector out;
    out.n_modes = v.n_modes;
    out.cutoff = c;
    out.amps = Eigen::VectorXcd::Zero(v.dim());
    out.truncation_loss = v.truncation_loss;

    const std::int64_t si = v.stride(mode_i);
    const std::int64_t sj = v.stride(mode_j);
    for (std::int64_t idx = 0; idx < v.dim(); ++idx) {
        Complex a = v.amps(idx);
        if (a == Complex(0.0, 0.0)) continue;
        int n = static_cast<int>((idx / si) % c1);
        int m = static_cast<int>((idx / sj) % c1);
        std::int64_t base = idx - std::int64_t(n) * si - std::int64_t(m) * sj;
        for (int p = std::max(0, n + m - c); p <= std::min(c, n + m); ++p) {
            int q = n + m - p;
            double coef = uat(n, m, p);
            if (coef == 0.0) continue;
            out.amps(base + std::int64_t(p) * si + std::int64_t(q) * sj) += a * coef;
        }
    }
    return out;
}

FockProjectionResult fock_project(const FockVector& v, int mode, int n) {
    check_fock_mode(v, mode);
    if (n < 0) throw std::invalid_argument("negative photon number");
    const int c1 = v.cutoff + 1;
    FockVector out;
    out.n_modes = v.n_modes - 1;
    out.cutoff = v.cutoff;
    out.amps = Eigen::VectorXcd::Zero(pow_i64(c1, out.n_modes));
    out.truncation_loss = v.truncation_loss;
    if (n <= v.cutoff) {
        const std::int64_t s = v.stride(mode);
        // Modes slower than `mode` keep their digits; faster ones shift down.
        for (std::int64_t o = 0; o < out.amps.size(); ++o) {
            std::int64_t hi = o / s;
            std::int64_t lo = o % s;
            out.amps(o) = v.amps((hi * c1 + n) * s + lo);
        }
    }
    double p = out.amps.squaredNorm();
    return {std::move(out), p};
}

double fock_mean_photons(const FockVector& v) {
    const int c1 = v.cutoff + 1;
    double num = 0.0;
    double den = 0.0;
    for (std::int64_t idx = 0; idx < v.dim(); ++idx) {
        double w = std::norm(v.amps(idx));
        if (w == 0.0) continue;
        std::int64_t rest = idx;
        int total = 0;
        for (int m = 0; m < v.n_modes; ++m) {
            total += static_cast<int>(rest % c1);
            rest /= c1;
        }
        num += w * total;
        den += w;
    }
    if (!(den > kNormFloor)) throw NormTooSmall("mean photon number of a null Fock vector");
    return num / den;
}

}  // namespace ecslab
