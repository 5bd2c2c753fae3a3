#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "jcm/model.hpp"

namespace jcm::spectral {

/// Coefficients of det(lambda I - H) = lambda^3 + beta lambda^2 + gamma lambda + eta
/// and the trigonometric Cardano quantities derived from them.
struct CardanoIntermediates {
    double beta = 0.0;
    double gamma = 0.0;
    double eta = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double theta = 0.0;  // in [0, pi]
    double F = 0.0;      // F_{n,0} + F_{n,1} + F_{n,2}
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double G = 0.0;
    bool degenerate = false;  // -Q under the triple-root threshold
};

/// Characteristic frequency used to scale degeneracy tests: g + chi + |kappa - J| + |delta|.
double degeneracy_scale(const model::ModelParams& params);

/// Q and R are evaluated on the trace-free part of the block (algebraically
/// identical to the beta/gamma/eta route, without its cancellation at large
/// diagonal entries). theta's arccos argument is clamped to [-1, 1].
CardanoIntermediates cardano(const model::PhotonBlock& block, double scale);

/// E_j = -beta/3 + 2 sqrt(-Q) cos((theta + 2(j-1) pi) / 3), j = 1, 2, 3.
/// The labelling always satisfies E_1 >= E_3 >= E_2.
std::array<double, 3> eigenvalues(const CardanoIntermediates& inter);

struct RabiFrequencies {
    double w21 = 0.0;  // E1 - E2
    double w31 = 0.0;  // E1 - E3
    double w23 = 0.0;  // E3 - E2
};

/// Differences of the stored energies.
RabiFrequencies rabi_frequencies(const std::array<double, 3>& energies);

/// The same three frequencies from sqrt(-3Q) and theta/3.
RabiFrequencies rabi_frequencies_trig(const CardanoIntermediates& inter);

struct WeightingAmplitudes {
    double l11 = 0.0, l22 = 0.0, l33 = 0.0;
    double l21 = 0.0, l31 = 0.0, l23 = 0.0;

    /// sum_j L_jj + 2 (L21 + L31 + L23); equals 1 for orthonormal C.
    double completeness() const { return l11 + l22 + l33 + 2.0 * (l21 + l31 + l23); }
};

/// L_jk = C_j1 C_k1 (C_j1 C_k1 - C_j3 C_k3).
WeightingAmplitudes weighting_amplitudes(const Eigen::Matrix3d& coeffs);

struct EigenvectorResult {
    Eigen::Matrix3d coeffs = Eigen::Matrix3d::Identity();  // row j = eigenvector j
    std::array<double, 3> norms{};                         // N_j of the closed form
    bool used_fallback = false;
};

/// Closed-form eigenvectors (H12 H23, H23 (E - H11), (E - H11)(E - H22) - H12^2) / N_j.
/// Falls back to Jacobi for the whole block when any N_j < 1e-10 ||H||^2, the
/// block is degenerate, or the closed-form rows are not orthonormal to 1e-12.
EigenvectorResult eigenvector_coeffs(const model::PhotonBlock& block,
                                     const CardanoIntermediates& inter,
                                     const std::array<double, 3>& energies);

struct BlockSpectrum {
    int n = 0;
    std::array<double, 3> energies{};
    Eigen::Matrix3d coeffs = Eigen::Matrix3d::Identity();
    RabiFrequencies rabi;
    WeightingAmplitudes lambdas;
    CardanoIntermediates cardano;
    bool used_fallback = false;
};

BlockSpectrum compute_spectrum(const model::ModelParams& params, int n);

/// Spectra for n = 0..n_max, index == n.
std::vector<BlockSpectrum> compute_spectra(const model::ModelParams& params, int n_max);

}  // namespace jcm::spectral
