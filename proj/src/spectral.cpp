#include "jcm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jcm/linalg.hpp"

namespace jcm::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 3> centred_roots(const CardanoIntermediates& inter) {
    if (inter.degenerate) return {0.0, 0.0, 0.0};
    const double r = 2.0 * std::sqrt(-inter.Q);
    return {r * std::cos(inter.theta / 3.0),
            r * std::cos((inter.theta + 2.0 * kPi) / 3.0),
            r * std::cos((inter.theta + 4.0 * kPi) / 3.0)};
}

double centre(const Eigen::Matrix3d& h) { return h.trace() / 3.0; }

// Sign convention shared by the closed form and the fallback: the first
// component that is not negligible is positive.
void fix_row_sign(Eigen::Matrix3d& c, int j) {
    for (int k = 0; k < 3; ++k) {
        if (std::abs(c(j, k)) > 1e-12) {
            if (c(j, k) < 0.0) c.row(j) *= -1.0;
            return;
        }
    }
}

Eigen::Matrix3d jacobi_rows(const Eigen::Matrix3d& h) {
    const auto eig = linalg::jacobi_eigen(h);
    // Cardano labelling is E1 >= E3 >= E2, Jacobi is ascending.
    Eigen::Matrix3d c;
    c.row(0) = eig.vectors.col(2).transpose();
    c.row(1) = eig.vectors.col(0).transpose();
    c.row(2) = eig.vectors.col(1).transpose();
    for (int j = 0; j < 3; ++j) fix_row_sign(c, j);
    return c;
}

}  // namespace

double degeneracy_scale(const model::ModelParams& params) {
    return params.g() + params.chi() + std::abs(params.kappa() - params.J()) +
           std::abs(params.delta());
}

CardanoIntermediates cardano(const model::PhotonBlock& block, double scale) {
    const auto& h = block.matrix;
    CardanoIntermediates out;

    const double h11 = h(0, 0), h22 = h(1, 1), h33 = h(2, 2);
    const double a2 = h(0, 1) * h(0, 1);
    const double b2 = h(1, 2) * h(1, 2);

    out.beta = -(h11 + h22 + h33);
    out.gamma = h22 * (h11 + h33) + h11 * h33 - a2 - b2;
    out.eta = -h11 * h22 * h33 + h11 * b2 + h33 * a2;

    out.F = block.F[0] + block.F[1] + block.F[2];
    const double f1sq = block.f_np1 * block.f_np1;
    const double f2sq = block.f_np2 * block.f_np2;
    out.delta_plus = f2sq + f1sq;
    out.delta_minus = f2sq - f1sq;
    out.G = block.F[0] * f2sq + block.F[2] * f1sq;

    const double c = centre(h);
    const double d1 = h11 - c, d2 = h22 - c, d3 = h33 - c;
    const double gamma_c = d1 * d2 + d1 * d3 + d2 * d3 - a2 - b2;
    const double eta_c = -(d1 * d2 * d3 - d1 * b2 - d3 * a2);
    out.Q = gamma_c / 3.0;
    out.R = -eta_c / 2.0;

    if (-out.Q < 1e-14 * scale * scale) {
        out.degenerate = true;
        out.theta = 0.0;
        return out;
    }
    const double arg = out.R / std::sqrt(-out.Q * out.Q * out.Q);
    out.theta = std::acos(std::clamp(arg, -1.0, 1.0));
    return out;
}

std::array<double, 3> eigenvalues(const CardanoIntermediates& inter) {
    const double c = -inter.beta / 3.0;
    const auto r = centred_roots(inter);
    return {c + r[0], c + r[1], c + r[2]};
}

RabiFrequencies rabi_frequencies(const std::array<double, 3>& e) {
    return {e[0] - e[1], e[0] - e[2], e[2] - e[1]};
}

RabiFrequencies rabi_frequencies_trig(const CardanoIntermediates& inter) {
    if (inter.degenerate) return {};
    const double s = std::sqrt(-3.0 * inter.Q);
    const double c3 = std::cos(inter.theta / 3.0);
    const double s3 = std::sin(inter.theta / 3.0);
    return {s * (std::sqrt(3.0) * c3 + s3), s * (std::sqrt(3.0) * c3 - s3), 2.0 * s * s3};
}

WeightingAmplitudes weighting_amplitudes(const Eigen::Matrix3d& c) {
    auto lam = [&](int j, int k) {
        const double p = c(j, 0) * c(k, 0);
        return p * (p - c(j, 2) * c(k, 2));
    };
    WeightingAmplitudes w;
    w.l11 = lam(0, 0);
    w.l22 = lam(1, 1);
    w.l33 = lam(2, 2);
    w.l21 = lam(1, 0);
    w.l31 = lam(2, 0);
    w.l23 = lam(1, 2);
    return w;
}

EigenvectorResult eigenvector_coeffs(const model::PhotonBlock& block,
                                     const CardanoIntermediates& inter,
                                     const std::array<double, 3>& /*energies*/) {
    const auto& h = block.matrix;
    EigenvectorResult out;
    if (inter.degenerate) {
        out.coeffs = jacobi_rows(h);
        out.used_fallback = true;
        return out;
    }

    // Work relative to the trace centre so E - H_ii carries no large offset.
    const double c = centre(h);
    const double d1 = h(0, 0) - c, d2 = h(1, 1) - c;
    const double h12 = h(0, 1), h23 = h(1, 2);
    const auto e = centred_roots(inter);
    const double threshold = 1e-10 * h.squaredNorm();

    bool fallback = false;
    for (int j = 0; j < 3; ++j) {
        const double v1 = h12 * h23;
        const double v2 = h23 * (e[j] - d1);
        const double v3 = (e[j] - d2) * (e[j] - d1) - h12 * h12;
        const double norm = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
        out.norms[j] = norm;
        if (!(norm >= threshold) || norm == 0.0) {
            fallback = true;
            continue;
        }
        out.coeffs.row(j) << v1 / norm, v2 / norm, v3 / norm;
        fix_row_sign(out.coeffs, j);
    }

    if (!fallback) {
        const double defect =
            (out.coeffs * out.coeffs.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
        fallback = defect > 1e-12;
    }
    if (fallback) {
        out.coeffs = jacobi_rows(h);
        out.used_fallback = true;
    }
    return out;
}

BlockSpectrum compute_spectrum(const model::ModelParams& params, int n) {
    const auto block = model::build_block(params, n);
    BlockSpectrum s;
    s.n = n;
    s.cardano = cardano(block, degeneracy_scale(params));
    s.energies = eigenvalues(s.cardano);
    const auto vec = eigenvector_coeffs(block, s.cardano, s.energies);
    s.coeffs = vec.coeffs;
    s.used_fallback = vec.used_fallback;
    s.rabi = rabi_frequencies(s.energies);
    s.lambdas = weighting_amplitudes(s.coeffs);
    return s;
}

std::vector<BlockSpectrum> compute_spectra(const model::ModelParams& params, int n_max) {
    params.check_tables(n_max);
    std::vector<BlockSpectrum> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(compute_spectrum(params, n));
    return out;
}

}  // namespace jcm::spectral
