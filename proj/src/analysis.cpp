#include "jcm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jcm/errors.hpp"

namespace jcm::analysis {

std::vector<double> linspace(double a, double b, int count) {
    if (count < 1) throw DomainError("linspace needs count >= 1");
    std::vector<double> x(static_cast<std::size_t>(count));
    if (count == 1) {
        x[0] = a;
        return x;
    }
    const double h = (b - a) / (count - 1);
    for (int i = 0; i < count; ++i) x[i] = a + i * h;
    x.back() = b;
    return x;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
    std::vector<std::size_t> out;
    const std::size_t n = y.size();
    if (n == 0) return out;
    if (n == 1) return {0};
    if (y[0] > y[1]) out.push_back(0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (y[i - 1] < y[i] && y[i] >= y[i + 1]) out.push_back(i);
    if (y[n - 1] > y[n - 2]) out.push_back(n - 1);
    return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& y) {
    std::vector<double> neg(y.size());
    std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });
    return local_maxima(neg);
}

double prominence(const std::vector<double>& y, std::size_t peak) {
    const double h = y[peak];
    double left_min = h;
    for (std::size_t i = peak; i-- > 0;) {
        if (y[i] > h) break;
        left_min = std::min(left_min, y[i]);
    }
    double right_min = h;
    for (std::size_t i = peak + 1; i < y.size(); ++i) {
        if (y[i] > h) break;
        right_min = std::min(right_min, y[i]);
    }
    return h - std::max(left_min, right_min);
}

std::vector<double> moving_average(const std::vector<double>& y, double dx, double width) {
    const auto half = static_cast<long>(std::floor(0.5 * width / dx));
    const long n = static_cast<long>(y.size());
    std::vector<double> prefix(y.size() + 1, 0.0);
    for (long i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
    std::vector<double> out(y.size());
    for (long i = 0; i < n; ++i) {
        const long lo = std::max(0L, i - half);
        const long hi = std::min(n - 1, i + half);
        out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<double> peak_envelope(const std::vector<double>& x, const std::vector<double>& y,
                                  double offset) {
    std::vector<double> a(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) a[i] = std::abs(y[i] - offset);
    auto peaks = local_maxima(a);
    if (peaks.empty() || peaks.front() != 0) peaks.insert(peaks.begin(), 0);
    if (peaks.back() != y.size() - 1) peaks.push_back(y.size() - 1);

    const double ref = a[0] > 0.0 ? a[0] : 1.0;
    std::vector<double> env(y.size());
    for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
        const std::size_t i0 = peaks[k], i1 = peaks[k + 1];
        for (std::size_t i = i0; i <= i1; ++i) {
            const double w = i1 == i0 ? 0.0 : (x[i] - x[i0]) / (x[i1] - x[i0]);
            env[i] = ((1.0 - w) * a[i0] + w * a[i1]) / ref;
        }
    }
    return env;
}

double first_crossing_below(const std::vector<double>& x, const std::vector<double>& y,
                            double level, double x_start) {
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (x[i] < x_start) continue;
        if (y[i] < level && y[i - 1] >= level) {
            const double w = (y[i - 1] - level) / (y[i - 1] - y[i]);
            return x[i - 1] + w * (x[i] - x[i - 1]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

RevivalFeatures detect_revivals(const std::vector<double>& x, const std::vector<double>& y,
                                double offset, double smooth_width, double rel_prominence,
                                double min_separation) {
    RevivalFeatures out;
    if (x.size() < 3) return out;
    std::vector<double> a(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) a[i] = std::abs(y[i] - offset);
    const auto s = moving_average(a, x[1] - x[0], smooth_width);
    const double top = *std::max_element(s.begin(), s.end());
    std::vector<std::size_t> cand;
    for (std::size_t i : local_maxima(s))
        if (prominence(s, i) >= rel_prominence * top) cand.push_back(i);
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    for (std::size_t i : cand) {
        const bool near = std::any_of(out.peak_times.begin(), out.peak_times.end(),
                                      [&](double t) { return std::abs(t - x[i]) < min_separation; });
        if (!near) out.peak_times.push_back(x[i]);
    }
    std::sort(out.peak_times.begin(), out.peak_times.end());

    std::vector<double> gaps;
    for (std::size_t k = 1; k < out.peak_times.size(); ++k)
        gaps.push_back(out.peak_times[k] - out.peak_times[k - 1]);
    if (!gaps.empty()) {
        std::sort(gaps.begin(), gaps.end());
        const std::size_t m = gaps.size() / 2;
        out.spacing = gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
    }
    return out;
}

double window_height(const std::vector<double>& x, const std::vector<double>& y, double offset,
                     double centre, double half_width) {
    double h = 0.0;
    const auto lo = std::lower_bound(x.begin(), x.end(), centre - half_width) - x.begin();
    for (auto i = static_cast<std::size_t>(lo); i < x.size() && x[i] <= centre + half_width; ++i)
        h = std::max(h, std::abs(y[i] - offset));
    return h;
}

double v_fit(double left, double centre, double right) {
    const double slope = std::max(left, right) - centre;
    if (slope <= 0.0) return 0.0;
    return std::clamp((left - right) / (2.0 * slope), -0.5, 0.5);
}

BeatFeatures detect_beat_nodes(const std::vector<double>& x, const std::vector<double>& y,
                               double offset, double period, double max_rel_height) {
    BeatFeatures out;
    if (!(period > 0.0) || x.empty()) return out;
    for (int m = 0; m * period <= x.back() + 1e-12; ++m)
        out.heights.push_back(window_height(x, y, offset, m * period, 0.5 * period));
    const auto& h = out.heights;
    const double top = h.empty() ? 0.0 : *std::max_element(h.begin(), h.end());
    for (std::size_t m = 1; m + 1 < h.size(); ++m) {
        if (h[m] < h[m - 1] && h[m] <= h[m + 1] && h[m] < max_rel_height * top)
            out.node_times.push_back((m + v_fit(h[m - 1], h[m], h[m + 1])) * period);
    }
    return out;
}

double mean_spacing(const std::vector<double>& times) {
    if (times.size() < 2) return 0.0;
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

namespace {

double golden_min(const std::function<double(double)>& fn, double a, double b) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> refined_minima(const std::function<double(double)>& fn, double a, double b,
                                   int samples) {
    const auto x = linspace(a, b, samples);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = fn(x[i]);
    std::vector<double> out;
    for (std::size_t i : local_minima(y)) {
        if (i == 0 || i + 1 == x.size()) continue;
        out.push_back(golden_min(fn, x[i - 1], x[i + 1]));
    }
    return out;
}

std::vector<double> refined_maxima(const std::function<double(double)>& fn, double a, double b,
                                   int samples) {
    return refined_minima([&](double t) { return -fn(t); }, a, b, samples);
}

}  // namespace jcm::analysis
