#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "jcm/spectral.hpp"

namespace jcm::dynamics {

using cplx = std::complex<double>;

/// Initial atomic state. Symmetric attaches field amplitude A_n to
/// (|e,g> + |g,e>)/sqrt2 (x) |n+1>, i.e. to the second state of block n.
enum class AtomInit { BothExcited, Symmetric };

std::string to_string(AtomInit init);
AtomInit parse_atom_init(const std::string& text);

struct FieldInit {
    std::vector<cplx> amplitudes;  // A_n, n = 0..n_max
    int n_max = 0;
    double mean_n = 0.0;
    double phase = 0.0;
    AtomInit atom_init = AtomInit::BothExcited;

    std::vector<double> probabilities() const;
};

/// ceil(<n> + 12 sqrt(<n>) + 20)
int auto_n_max(double mean_n);

/// Smallest n_max whose tail mass sum_{n > n_max - 2} P_n is below 1e-12.
int minimal_n_max(double mean_n);

/// Coherent state amplitudes A_n = e^{-<n>/2} (sqrt<n> e^{i phase})^n / sqrt(n!),
/// evaluated in log space. Throws TruncationError if the tail beyond
/// n_max - 2 carries 1e-12 or more probability.
FieldInit coherent_field(double mean_n, double phase, int n_max,
                         AtomInit atom_init = AtomInit::BothExcited);

/// D_k^(n)(t) for each block n; k = 0, 1, 2.
struct EvolutionCoeffs {
    std::vector<std::array<cplx, 3>> d;
};

struct AtomDensity {
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();  // basis |e,e>, sym, |g,g>

    double trace() const { return rho.trace().real(); }
    double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

struct FieldDensity {
    Eigen::MatrixXcd rho;  // Fock basis 0..n_max+2

    int n_max() const { return static_cast<int>(rho.rows()) - 3; }
    double trace() const { return rho.trace().real(); }
    double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

/// Analytic propagator: holds the block spectra and the initial field and
/// evaluates every observable at arbitrary absolute times t.
class AnalyticEvolution {
public:
    /// Requires spectra for n = 0..field.n_max.
    AnalyticEvolution(std::vector<spectral::BlockSpectrum> spectra, FieldInit field);

    const FieldInit& field() const noexcept { return field_; }
    const std::vector<spectral::BlockSpectrum>& spectra() const noexcept { return spectra_; }

    EvolutionCoeffs coeffs(double t) const;

    /// Closed-form <D_Z>(t) from P_n, Lambda_jk and the Rabi frequencies.
    /// Only defined for BothExcited; throws DomainError otherwise.
    double inversion(double t) const;

    /// Time-independent part sum_n P_n sum_j Lambda_jj^(n).
    double inversion_offset() const;

    AtomDensity atom_density(double t) const;
    FieldDensity field_density(double t) const;

    /// Double-sum closed form of Tr(rho_A^2) with A_m, D^(m) = 0 outside [0, n_max].
    double purity_closed_form(double t) const;

private:
    // psi(k, m): amplitude of |phi_k> (x) |m>.
    Eigen::Matrix<cplx, 3, Eigen::Dynamic> joint_amplitudes(double t) const;

    std::vector<spectral::BlockSpectrum> spectra_;
    FieldInit field_;
    std::vector<double> energies_;          // E_j^(n) at 3n + j
    std::vector<double> projections_;       // C_jc^(n) C_jk^(n) at 9n + 3j + k
    std::vector<double> inv_weights_;       // 2 P_n Lambda
    std::vector<double> inv_freqs_;         // matching Rabi frequencies
    double inv_offset_ = 0.0;
};

EvolutionCoeffs evolve_coeffs(const std::vector<spectral::BlockSpectrum>& spectra,
                              AtomInit atom_init, double t);
double atomic_inversion(const FieldInit& field,
                        const std::vector<spectral::BlockSpectrum>& spectra, double t);
AtomDensity reduced_atom_density(const FieldInit& field,
                                 const std::vector<spectral::BlockSpectrum>& spectra, double t);
FieldDensity reduced_field_density(const FieldInit& field,
                                   const std::vector<spectral::BlockSpectrum>& spectra,
                                   double t);

/// trace(rho_A diag(1, 0, -1))
double inversion_from_density(const AtomDensity& rho);

/// Tr(rho^2)
double purity(const AtomDensity& rho);

/// rho_A in the two-qubit basis {|g,g>, |g,e>, |e,g>, |e,e>}.
Eigen::Matrix4cd embed_two_qubit(const AtomDensity& rho);

/// Wootters concurrence of a two-qubit density matrix (computational basis).
/// Throws NumericalError if the spin-flipped product has eigenvalues with
/// imaginary part above 1e-8.
double concurrence(const Eigen::Matrix4cd& rho);
double concurrence(const AtomDensity& rho);

/// von Neumann entropy of rho_A; by Araki-Lieb also the field entropy.
double field_entropy(const AtomDensity& rho);

/// von Neumann entropy evaluated directly on the field density.
double von_neumann_entropy(const FieldDensity& rho);

/// <m|alpha> for m = 0..dim-1, computed in log space.
std::vector<cplx> coherent_overlaps(cplx alpha, int dim);

/// Evaluates Q(alpha) = <alpha|rho_F|alpha> / pi for many alphas.
class HusimiEvaluator {
public:
    explicit HusimiEvaluator(const FieldDensity& rho);

    /// Throws DomainError when |alpha|^2 > n_max / 2.
    double operator()(cplx alpha) const;

    double max_abs_alpha_sq() const noexcept { return limit_; }

private:
    int dim_;
    double limit_;
    std::vector<double> re_, im_;
};

double husimi_q(const FieldDensity& rho, cplx alpha);

struct Axis {
    double min = -6.0;
    double max = 6.0;
    int count = 241;

    double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
    double at(int i) const { return min + i * step(); }
};

/// Q on a node grid; values[i_re * im.count + i_im].
struct QGrid {
    Axis re, im;
    std::vector<double> values;

    double at(int i_re, int i_im) const {
        return values[static_cast<std::size_t>(i_re) * im.count + i_im];
    }
    /// Midpoint rule with one cell of area step_re * step_im per node.
    double integral() const;
};

QGrid husimi_grid(const FieldDensity& rho, const Axis& re, const Axis& im);

struct Lobe {
    double re = 0.0;
    double im = 0.0;
    double value = 0.0;
    double radius() const;
};

/// Grid local maxima (8-neighbourhood) at or above rel_threshold * global max,
/// merged by non-maximum suppression within min_separation. Strongest first.
std::vector<Lobe> find_lobes(const QGrid& grid, double rel_threshold = 0.1,
                             double min_separation = 0.75);

}  // namespace jcm::dynamics
