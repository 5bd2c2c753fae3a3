#pragma once

// Data-parallel inner loops of the analytic engine. Every kernel has a scalar
// reference implementation and an AVX2/FMA implementation; the active one is
// chosen at runtime from the CPU's capabilities and can be overridden.

#include <span>
#include <string>

namespace jcm::kernels {

enum class Backend { Scalar, Avx2 };

std::string to_string(Backend b);

/// True when the CPU reports AVX2 and FMA and the AVX2 code was compiled in.
bool avx2_supported() noexcept;

/// Backend used by the dispatching entry points below.
Backend active_backend() noexcept;

/// Throws DomainError when selecting Avx2 on a CPU without it.
void set_backend(Backend b);

/// sum_i w[i] * cos(f[i] * t)
double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t);

/// cos_out[i] = cos(f[i] * t), sin_out[i] = sin(f[i] * t)
void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out);

/// Re(v^H M v) for a dim x dim complex matrix in split row-major storage
/// (m_re[r * dim + c], m_im[r * dim + c]) and v = v_re + i v_im of length dim.
double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im);

namespace scalar {
double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t);
void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out);
double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im);
}  // namespace scalar

namespace avx2 {
double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t);
void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out);
double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im);
}  // namespace avx2

}  // namespace jcm::kernels
