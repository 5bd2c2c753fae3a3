// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>

#include "jcm/kernels.hpp"

namespace jcm::kernels::avx2 {

namespace {

// Cody-Waite split of pi/2 (each part exact in 24-26 bits, so y * part is exact
// for the quadrant counts reachable below kReduceLimit).
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kPio2Hi = 1.57079625129699707031;
constexpr double kPio2Mid = 7.54978941586159635336e-8;
constexpr double kPio2Lo = 5.39030285815811905290e-15;
constexpr double kReduceLimit = 1e8;

// Minimax coefficients on [-pi/4, pi/4] (Cephes).
constexpr double kS0 = 1.58962301576546568060e-10;
constexpr double kS1 = -2.50507477628578072866e-8;
constexpr double kS2 = 2.75573136213857245213e-6;
constexpr double kS3 = -1.98412698295895385996e-4;
constexpr double kS4 = 8.33333333332211858878e-3;
constexpr double kS5 = -1.66666666666666307295e-1;

constexpr double kC0 = -1.13585365213876817300e-11;
constexpr double kC1 = 2.08757008419747316778e-9;
constexpr double kC2 = -2.75573141792967388112e-7;
constexpr double kC3 = 2.48015872888517045348e-5;
constexpr double kC4 = -1.38888888888730564116e-3;
constexpr double kC5 = 4.16666666666665929218e-2;

struct SinCos {
    __m256d sin;
    __m256d cos;
};

inline __m256d poly6(__m256d z, double a0, double a1, double a2, double a3, double a4,
                     double a5) {
    __m256d p = _mm256_set1_pd(a0);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(a1));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(a2));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(a3));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(a4));
    return _mm256_fmadd_pd(p, z, _mm256_set1_pd(a5));
}

inline SinCos sincos_pd(__m256d x) {
    const __m256d y = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Lo), r);

    const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(y));
    const __m256d z = _mm256_mul_pd(r, r);

    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z),
                                          poly6(z, kS0, kS1, kS2, kS3, kS4, kS5), r);
    const __m256d cos_r =
        _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kC0, kC1, kC2, kC3, kC4, kC5),
                        _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d odd = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));

    // x = r + q pi/2: sin picks (s, c, -s, -c), cos picks (c, -s, -c, s) by q mod 4.
    const __m256d sin_base = _mm256_blendv_pd(sin_r, cos_r, odd);
    const __m256d cos_base = _mm256_blendv_pd(cos_r, sin_r, odd);
    const __m256i sin_sign = _mm256_slli_epi64(_mm256_and_si256(q, two), 62);
    const __m256i cos_sign = _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), 62);

    return {_mm256_xor_pd(sin_base, _mm256_castsi256_pd(sin_sign)),
            _mm256_xor_pd(cos_base, _mm256_castsi256_pd(cos_sign))};
}

inline bool in_range(__m256d x) {
    const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
    const __m256d bad = _mm256_cmp_pd(ax, _mm256_set1_pd(kReduceLimit), _CMP_NLE_UQ);
    return _mm256_movemask_pd(bad) == 0;
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t) {
    const std::size_t n = weights.size();
    const double* w = weights.data();
    const double* f = freqs.data();
    const __m256d tv = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(f + i), tv);
        if (in_range(x)) {
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), sincos_pd(x).cos, acc);
        } else {
            for (std::size_t k = i; k < i + 4; ++k) tail += w[k] * std::cos(f[k] * t);
        }
    }
    for (; i < n; ++i) tail += w[i] * std::cos(f[i] * t);
    return hsum(acc) + tail;
}

void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out) {
    const std::size_t n = freqs.size();
    const double* f = freqs.data();
    double* co = cos_out.data();
    double* so = sin_out.data();
    const __m256d tv = _mm256_set1_pd(t);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(f + i), tv);
        if (in_range(x)) {
            const SinCos sc = sincos_pd(x);
            _mm256_storeu_pd(co + i, sc.cos);
            _mm256_storeu_pd(so + i, sc.sin);
        } else {
            for (std::size_t k = i; k < i + 4; ++k) {
                co[k] = std::cos(f[k] * t);
                so[k] = std::sin(f[k] * t);
            }
        }
    }
    for (; i < n; ++i) {
        co[i] = std::cos(f[i] * t);
        so[i] = std::sin(f[i] * t);
    }
}

double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im) {
    const std::size_t dim = v_re.size();
    const double* vr = v_re.data();
    const double* vi = v_im.data();
    double acc = 0.0;

    for (std::size_t r = 0; r < dim; ++r) {
        const double* mr = m_re.data() + r * dim;
        const double* mi = m_im.data() + r * dim;
        __m256d wr = _mm256_setzero_pd();
        __m256d wi = _mm256_setzero_pd();
        std::size_t c = 0;
        for (; c + 4 <= dim; c += 4) {
            const __m256d a = _mm256_loadu_pd(mr + c);
            const __m256d b = _mm256_loadu_pd(mi + c);
            const __m256d x = _mm256_loadu_pd(vr + c);
            const __m256d y = _mm256_loadu_pd(vi + c);
            wr = _mm256_fmadd_pd(a, x, wr);
            wr = _mm256_fnmadd_pd(b, y, wr);
            wi = _mm256_fmadd_pd(a, y, wi);
            wi = _mm256_fmadd_pd(b, x, wi);
        }
        double sr = hsum(wr), si = hsum(wi);
        for (; c < dim; ++c) {
            sr += mr[c] * vr[c] - mi[c] * vi[c];
            si += mr[c] * vi[c] + mi[c] * vr[c];
        }
        acc += vr[r] * sr + vi[r] * si;
    }
    return acc;
}

}  // namespace jcm::kernels::avx2
