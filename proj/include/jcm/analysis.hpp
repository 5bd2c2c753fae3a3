#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace jcm::analysis {

/// count points from a to b inclusive.
std::vector<double> linspace(double a, double b, int count);

/// Indices i with y[i-1] < y[i] >= y[i+1]; end points count when they beat their single neighbour.
std::vector<std::size_t> local_maxima(const std::vector<double>& y);
std::vector<std::size_t> local_minima(const std::vector<double>& y);

/// Topographic prominence of the sample at peak (as in scipy.signal.peak_prominences).
double prominence(const std::vector<double>& y, std::size_t peak);

/// Centred moving average over a window of width (in x units) on a uniform grid.
std::vector<double> moving_average(const std::vector<double>& y, double dx, double width);

/// Piecewise-linear envelope through the local maxima of |y - offset|, normalised
/// by its value at the first sample. Evaluated on the same grid as y.
std::vector<double> peak_envelope(const std::vector<double>& x, const std::vector<double>& y,
                                  double offset);

/// First x after x_start where y drops below level, linearly interpolated; NaN if never.
double first_crossing_below(const std::vector<double>& x, const std::vector<double>& y,
                            double level, double x_start = 0.0);

struct RevivalFeatures {
    std::vector<double> peak_times;  // revival centres
    double spacing = 0.0;            // median spacing of consecutive peaks
};

/// Revival peaks: local maxima of |y - offset| averaged over a window of width
/// smooth_width, keeping maxima whose prominence is at least rel_prominence of
/// the largest smoothed value, then suppressing weaker peaks closer than min_separation.
RevivalFeatures detect_revivals(const std::vector<double>& x, const std::vector<double>& y,
                                double offset, double smooth_width = 0.05,
                                double rel_prominence = 0.2, double min_separation = 0.5);

/// max |y - offset| within [centre - half_width, centre + half_width].
double window_height(const std::vector<double>& x, const std::vector<double>& y, double offset,
                     double centre, double half_width);

struct BeatFeatures {
    std::vector<double> heights;     // revival height sequence at m * period
    std::vector<double> node_times;  // V-fit refined local minima of heights
};

/// Beat nodes of the revival train. Heights are taken around m * period for
/// m = 0.. while m * period <= x.back(); a node is a local minimum of the
/// heights below max_rel_height times the largest height.
BeatFeatures detect_beat_nodes(const std::vector<double>& x, const std::vector<double>& y,
                               double offset, double period, double max_rel_height = 0.5);

/// Mean spacing of consecutive entries; 0 with fewer than two.
double mean_spacing(const std::vector<double>& times);

/// Vertex offset (in sample spacings, within [-0.5, 0.5]) of the symmetric V
/// through three samples whose middle one is the smallest.
double v_fit(double left, double centre, double right);

/// Local minima of a callable on a sampled grid, refined by golden-section search.
std::vector<double> refined_minima(const std::function<double(double)>& fn, double a, double b,
                                   int samples);
std::vector<double> refined_maxima(const std::function<double(double)>& fn, double a, double b,
                                   int samples);

}  // namespace jcm::analysis
