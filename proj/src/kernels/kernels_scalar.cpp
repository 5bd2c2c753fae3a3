#include <cmath>

#include "jcm/kernels.hpp"

namespace jcm::kernels::scalar {

double cos_sum(std::span<const double> weights, std::span<const double> freqs, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * std::cos(freqs[i] * t);
    return acc;
}

void sincos(std::span<const double> freqs, double t, std::span<double> cos_out,
            std::span<double> sin_out) {
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double x = freqs[i] * t;
        cos_out[i] = std::cos(x);
        sin_out[i] = std::sin(x);
    }
}

double hermitian_form(std::span<const double> m_re, std::span<const double> m_im,
                      std::span<const double> v_re, std::span<const double> v_im) {
    const std::size_t dim = v_re.size();
    double acc = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        const double* mr = m_re.data() + r * dim;
        const double* mi = m_im.data() + r * dim;
        double wr = 0.0, wi = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            wr += mr[c] * v_re[c] - mi[c] * v_im[c];
            wi += mr[c] * v_im[c] + mi[c] * v_re[c];
        }
        acc += v_re[r] * wr + v_im[r] * wi;
    }
    return acc;
}

}  // namespace jcm::kernels::scalar
