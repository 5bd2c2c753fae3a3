#include "jcm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"
#include "jcm/linalg.hpp"
#include "jcm/parallel.hpp"

namespace jcm::dynamics {

namespace {

constexpr double kTailLimit = 1e-12;

double log_poisson(double mean, int n) {
    if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
    return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

// sum_{n >= first} P_n, summed until the terms are negligible past the mode.
double poisson_tail(double mean, int first) {
    double tail = 0.0;
    for (int n = std::max(first, 0);; ++n) {
        const double p = std::exp(log_poisson(mean, n));
        tail += p;
        if (n > mean && p < 1e-30 * std::max(tail, 1e-300)) break;
        if (n > mean && p == 0.0) break;
    }
    return tail;
}

}  // namespace

std::string to_string(AtomInit init) {
    return init == AtomInit::BothExcited ? "both_excited" : "symmetric";
}

AtomInit parse_atom_init(const std::string& text) {
    if (text == "both_excited") return AtomInit::BothExcited;
    if (text == "symmetric") return AtomInit::Symmetric;
    throw DomainError("unknown atom_init '" + text + "' (both_excited|symmetric)");
}

std::vector<double> FieldInit::probabilities() const {
    std::vector<double> p(amplitudes.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes[i]);
    return p;
}

int auto_n_max(double mean_n) {
    return static_cast<int>(std::ceil(mean_n + 12.0 * std::sqrt(mean_n) + 20.0));
}

int minimal_n_max(double mean_n) {
    int n_max = 2;
    while (poisson_tail(mean_n, n_max - 1) >= kTailLimit) ++n_max;
    return n_max;
}

FieldInit coherent_field(double mean_n, double phase, int n_max, AtomInit atom_init) {
    if (!std::isfinite(mean_n) || mean_n < 0.0) throw DomainError("mean_n must be finite and >= 0");
    if (!std::isfinite(phase)) throw DomainError("phase must be finite");
    if (n_max < 0) throw DomainError("n_max must be >= 0");

    const double tail = poisson_tail(mean_n, n_max - 1);
    if (tail >= kTailLimit) {
        const int suggestion = minimal_n_max(mean_n);
        throw TruncationError("coherent state with <n> = " + std::to_string(mean_n) +
                                  " leaves tail mass " + std::to_string(tail) +
                                  " above n_max - 2; use n_max >= " + std::to_string(suggestion),
                              suggestion);
    }

    FieldInit out;
    out.n_max = n_max;
    out.mean_n = mean_n;
    out.phase = phase;
    out.atom_init = atom_init;
    out.amplitudes.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double lp = log_poisson(mean_n, n);
        out.amplitudes[n] = std::isinf(lp) ? cplx{} : std::polar(std::exp(0.5 * lp), n * phase);
    }
    return out;
}

AnalyticEvolution::AnalyticEvolution(std::vector<spectral::BlockSpectrum> spectra, FieldInit field)
    : spectra_(std::move(spectra)), field_(std::move(field)) {
    const auto blocks = static_cast<std::size_t>(field_.n_max) + 1;
    if (spectra_.size() < blocks)
        throw DomainError("need block spectra for n = 0.." + std::to_string(field_.n_max));
    spectra_.resize(blocks);
    for (std::size_t n = 0; n < blocks; ++n)
        if (spectra_[n].n != static_cast<int>(n)) throw DomainError("spectra must be indexed by n");

    const int c = field_.atom_init == AtomInit::BothExcited ? 0 : 1;
    energies_.resize(3 * blocks);
    projections_.resize(9 * blocks);
    inv_weights_.reserve(3 * blocks);
    inv_freqs_.reserve(3 * blocks);

    for (std::size_t n = 0; n < blocks; ++n) {
        const auto& s = spectra_[n];
        for (int j = 0; j < 3; ++j) {
            energies_[3 * n + j] = s.energies[j];
            for (int k = 0; k < 3; ++k) projections_[9 * n + 3 * j + k] = s.coeffs(j, c) * s.coeffs(j, k);
        }
        const double p = std::norm(field_.amplitudes[n]);
        const auto& l = s.lambdas;
        inv_offset_ += p * (l.l11 + l.l22 + l.l33);
        inv_weights_.insert(inv_weights_.end(), {2 * p * l.l21, 2 * p * l.l31, 2 * p * l.l23});
        inv_freqs_.insert(inv_freqs_.end(), {s.rabi.w21, s.rabi.w31, s.rabi.w23});
    }
}

EvolutionCoeffs AnalyticEvolution::coeffs(double t) const {
    const std::size_t m = energies_.size();
    std::vector<double> cs(m), sn(m);
    kernels::sincos(energies_, t, cs, sn);

    EvolutionCoeffs out;
    out.d.resize(m / 3);
    for (std::size_t n = 0; n < out.d.size(); ++n) {
        for (int k = 0; k < 3; ++k) {
            double re = 0.0, im = 0.0;
            for (int j = 0; j < 3; ++j) {
                const double p = projections_[9 * n + 3 * j + k];
                re += p * cs[3 * n + j];
                im -= p * sn[3 * n + j];
            }
            out.d[n][k] = {re, im};
        }
    }
    return out;
}

double AnalyticEvolution::inversion(double t) const {
    if (field_.atom_init != AtomInit::BothExcited)
        throw DomainError("closed-form inversion assumes both atoms initially excited");
    return inv_offset_ + kernels::cos_sum(inv_weights_, inv_freqs_, t);
}

double AnalyticEvolution::inversion_offset() const { return inv_offset_; }

Eigen::Matrix<cplx, 3, Eigen::Dynamic> AnalyticEvolution::joint_amplitudes(double t) const {
    const auto d = coeffs(t);
    Eigen::Matrix<cplx, 3, Eigen::Dynamic> psi =
        Eigen::Matrix<cplx, 3, Eigen::Dynamic>::Zero(3, field_.n_max + 3);
    for (int n = 0; n <= field_.n_max; ++n)
        for (int k = 0; k < 3; ++k) psi(k, n + k) = field_.amplitudes[n] * d.d[n][k];
    return psi;
}

AtomDensity AnalyticEvolution::atom_density(double t) const {
    const auto psi = joint_amplitudes(t);
    return {psi * psi.adjoint()};
}

FieldDensity AnalyticEvolution::field_density(double t) const {
    const auto psi = joint_amplitudes(t);
    return {psi.transpose() * psi.conjugate()};
}

double AnalyticEvolution::purity_closed_form(double t) const {
    const auto d = coeffs(t);
    const int n_max = field_.n_max;
    auto amp = [&](int m) { return (m < 0 || m > n_max) ? cplx{} : field_.amplitudes[m]; };
    auto coef = [&](int m, int k) { return (m < 0 || m > n_max) ? cplx{} : d.d[m][k]; };

    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            cplx s{};
            for (int n = 0; n <= n_max; ++n) {
                const int shifted = n + j - k;
                s += amp(shifted) * std::conj(amp(n)) * coef(shifted, k) * std::conj(coef(n, j));
            }
            total += std::norm(s);
        }
    }
    return total;
}

EvolutionCoeffs evolve_coeffs(const std::vector<spectral::BlockSpectrum>& spectra,
                              AtomInit atom_init, double t) {
    const int c = atom_init == AtomInit::BothExcited ? 0 : 1;
    EvolutionCoeffs out;
    out.d.resize(spectra.size());
    std::vector<double> energies, cs, sn;
    for (const auto& s : spectra) energies.insert(energies.end(), s.energies.begin(), s.energies.end());
    cs.resize(energies.size());
    sn.resize(energies.size());
    kernels::sincos(energies, t, cs, sn);
    for (std::size_t n = 0; n < spectra.size(); ++n) {
        for (int k = 0; k < 3; ++k) {
            cplx acc{};
            for (int j = 0; j < 3; ++j) {
                const double p = spectra[n].coeffs(j, c) * spectra[n].coeffs(j, k);
                acc += p * cplx{cs[3 * n + j], -sn[3 * n + j]};
            }
            out.d[n][k] = acc;
        }
    }
    return out;
}

double atomic_inversion(const FieldInit& field,
                        const std::vector<spectral::BlockSpectrum>& spectra, double t) {
    return AnalyticEvolution(spectra, field).inversion(t);
}

AtomDensity reduced_atom_density(const FieldInit& field,
                                 const std::vector<spectral::BlockSpectrum>& spectra, double t) {
    return AnalyticEvolution(spectra, field).atom_density(t);
}

FieldDensity reduced_field_density(const FieldInit& field,
                                   const std::vector<spectral::BlockSpectrum>& spectra,
                                   double t) {
    return AnalyticEvolution(spectra, field).field_density(t);
}

double inversion_from_density(const AtomDensity& rho) {
    return rho.rho(0, 0).real() - rho.rho(2, 2).real();
}

double purity(const AtomDensity& rho) { return (rho.rho * rho.rho).trace().real(); }

Eigen::Matrix4cd embed_two_qubit(const AtomDensity& rho) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix<cplx, 4, 3> v = Eigen::Matrix<cplx, 4, 3>::Zero();
    v(3, 0) = 1.0;  // |e,e>
    v(1, 1) = s;    // |g,e>
    v(2, 1) = s;    // |e,g>
    v(0, 2) = 1.0;  // |g,g>
    return v * rho.rho * v.adjoint();
}

double concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho * flip * rho.conjugate() * flip;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, false);
    if (solver.info() != Eigen::Success) throw NumericalError("concurrence eigensolver failed");
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const cplx ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > 1e-8)
            throw NumericalError("spin-flipped product has complex eigenvalue (imag " +
                                 std::to_string(ev.imag()) + ")");
        lam[i] = std::sqrt(std::max(ev.real(), 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence(const AtomDensity& rho) { return concurrence(embed_two_qubit(rho)); }

double field_entropy(const AtomDensity& rho) {
    return linalg::entropy_from_eigenvalues(linalg::hermitian_eigenvalues(rho.rho));
}

double von_neumann_entropy(const FieldDensity& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("field density eigensolver failed");
    return linalg::entropy_from_eigenvalues(solver.eigenvalues());
}

std::vector<cplx> coherent_overlaps(cplx alpha, int dim) {
    std::vector<cplx> v(static_cast<std::size_t>(dim));
    const double r = std::abs(alpha);
    if (r == 0.0) {
        if (dim > 0) v[0] = 1.0;
        return v;
    }
    const double lr = std::log(r);
    const double arg = std::arg(alpha);
    for (int m = 0; m < dim; ++m) {
        const double lmag = -0.5 * r * r + m * lr - 0.5 * std::lgamma(m + 1.0);
        v[m] = std::polar(std::exp(lmag), m * arg);
    }
    return v;
}

HusimiEvaluator::HusimiEvaluator(const FieldDensity& rho)
    : dim_(static_cast<int>(rho.rho.rows())), limit_(0.5 * rho.n_max()) {
    const auto size = static_cast<std::size_t>(dim_) * dim_;
    re_.resize(size);
    im_.resize(size);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            re_[static_cast<std::size_t>(r) * dim_ + c] = rho.rho(r, c).real();
            im_[static_cast<std::size_t>(r) * dim_ + c] = rho.rho(r, c).imag();
        }
    }
}

double HusimiEvaluator::operator()(cplx alpha) const {
    if (std::norm(alpha) > limit_ * (1.0 + 1e-12)) {
        throw DomainError("|alpha|^2 = " + std::to_string(std::norm(alpha)) +
                          " exceeds n_max/2 = " + std::to_string(limit_) +
                          "; raise n_max or shrink the phase-space window");
    }
    const auto v = coherent_overlaps(alpha, dim_);
    std::vector<double> vr(v.size()), vi(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        vr[i] = v[i].real();
        vi[i] = v[i].imag();
    }
    return kernels::hermitian_form(re_, im_, vr, vi) / std::numbers::pi;
}

double husimi_q(const FieldDensity& rho, cplx alpha) { return HusimiEvaluator(rho)(alpha); }

double QGrid::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * re.step() * im.step();
}

QGrid husimi_grid(const FieldDensity& rho, const Axis& re, const Axis& im) {
    if (re.count < 1 || im.count < 1) throw DomainError("Q grid axes need at least one point");
    const HusimiEvaluator q(rho);
    QGrid grid{re, im, std::vector<double>(static_cast<std::size_t>(re.count) * im.count)};
    parallel_for(static_cast<std::size_t>(re.count), [&](std::size_t i) {
        const double x = re.at(static_cast<int>(i));
        for (int j = 0; j < im.count; ++j) grid.values[i * im.count + j] = q({x, im.at(j)});
    });
    return grid;
}

double Lobe::radius() const { return std::hypot(re, im); }

std::vector<Lobe> find_lobes(const QGrid& grid, double rel_threshold, double min_separation) {
    const double peak = *std::max_element(grid.values.begin(), grid.values.end());
    std::vector<Lobe> candidates;
    for (int i = 0; i < grid.re.count; ++i) {
        for (int j = 0; j < grid.im.count; ++j) {
            const double v = grid.at(i, j);
            if (v < rel_threshold * peak) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int a = i + di, b = j + dj;
                    if (a < 0 || b < 0 || a >= grid.re.count || b >= grid.im.count) continue;
                    if (grid.at(a, b) > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) candidates.push_back({grid.re.at(i), grid.im.at(j), v});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Lobe& a, const Lobe& b) { return a.value > b.value; });
    std::vector<Lobe> kept;
    for (const auto& c : candidates) {
        const bool near = std::any_of(kept.begin(), kept.end(), [&](const Lobe& k) {
            return std::hypot(k.re - c.re, k.im - c.im) < min_separation;
        });
        if (!near) kept.push_back(c);
    }
    return kept;
}

}  // namespace jcm::dynamics
