#include <atomic>

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"

#ifndef JCM_HAVE_AVX2
// Non-x86 builds: the AVX2 entry points forward to the reference code.
namespace jcm::kernels::avx2 {
double cos_sum(std::span<const double> w, std::span<const double> f, double t) {
    return scalar::cos_sum(w, f, t);
}
void sincos(std::span<const double> f, double t, std::span<double> c, std::span<double> s) {
    scalar::sincos(f, t, c, s);
}
double hermitian_form(std::span<const double> a, std::span<const double> b,
                      std::span<const double> x, std::span<const double> y) {
    return scalar::hermitian_form(a, b, x, y);
}
}  // namespace jcm::kernels::avx2
#endif

namespace jcm::kernels {

namespace {

bool detect_avx2() noexcept {
#if defined(JCM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detect_avx2() ? Backend::Avx2 : Backend::Scalar};
    return slot;
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() noexcept {
    static const bool ok = detect_avx2();
    return ok;
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_supported())
        throw DomainError("AVX2 backend requested but not supported on this CPU/build");
    backend_slot().store(b, std::memory_order_relaxed);
}

double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t) {
    return active_backend() == Backend::Avx2 ? avx2::cos_sum(weights, freqs, t)
                                             : scalar::cos_sum(weights, freqs, t);
}

void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out) {
    if (active_backend() == Backend::Avx2)
        avx2::sincos(freqs, t, cos_out, sin_out);
    else
        scalar::sincos(freqs, t, cos_out, sin_out);
}

double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im) {
    return active_backend() == Backend::Avx2 ? avx2::hermitian_form(m_re, m_im, v_re, v_im)
                                             : scalar::hermitian_form(m_re, m_im, v_re, v_im);
}

}  // namespace jcm::kernels
