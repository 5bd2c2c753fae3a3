#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcm/analysis.hpp"

using namespace jcm;
constexpr double kPi = std::numbers::pi;

TEST_CASE("linspace and extrema") {
    const auto x = analysis::linspace(0.0, 1.0, 5);
    REQUIRE(x.size() == 5);
    CHECK(x[1] == 0.25);
    CHECK(x.back() == 1.0);
    const std::vector<double> y{0, 2, 1, 3, 3, 0, 1};
    const auto mx = analysis::local_maxima(y);
    REQUIRE(mx.size() == 3);
    CHECK(mx[0] == 1);
    CHECK(mx[1] == 3);
    CHECK(mx[2] == 6);
    const auto mn = analysis::local_minima(y);
    CHECK(mn.front() == 0);
    CHECK(analysis::prominence(y, 1) == doctest::Approx(1.0));
    CHECK(analysis::prominence(y, 3) == doctest::Approx(3.0));
}

TEST_CASE("moving average preserves linear data away from the edges") {
    const auto x = analysis::linspace(0.0, 10.0, 1001);
    std::vector<double> y;
    for (double v : x) y.push_back(2 * v + 1);
    const auto s = analysis::moving_average(y, 0.01, 0.2);
    for (std::size_t i = 20; i + 20 < y.size(); ++i) CHECK(s[i] == doctest::Approx(y[i]));
}

TEST_CASE("collapse width of a Gaussian-damped oscillation") {
    const double width = 0.3;
    const auto x = analysis::linspace(0.0, 2.0, 20001);
    std::vector<double> y;
    for (double t : x) y.push_back(0.1 + std::exp(-t * t / (width * width)) * std::cos(60 * t));
    const auto env = analysis::peak_envelope(x, y, 0.1);
    CHECK(analysis::first_crossing_below(x, env, std::exp(-1.0)) == doctest::Approx(width).epsilon(0.02));
    CHECK(std::isnan(analysis::first_crossing_below(x, env, -1.0)));
}

TEST_CASE("revivals and beat nodes of a synthetic revival train") {
    // revivals every pi, amplitude |cos(tau / 8)| -> node at 4 pi, 12 pi
    const auto x = analysis::linspace(0.0, 16 * kPi, 40001);
    std::vector<double> y;
    for (double t : x) {
        const double s = std::sin(t);
        y.push_back(std::exp(-20 * s * s) * std::cos(t / 8) * std::cos(3 * t + 20 * std::sin(2 * t)));
    }
    const auto rev = analysis::detect_revivals(x, y, 0.0);
    CHECK(rev.spacing == doctest::Approx(kPi).epsilon(0.02));
    const auto beat = analysis::detect_beat_nodes(x, y, 0.0, rev.spacing);
    REQUIRE(beat.node_times.size() >= 1);
    CHECK(beat.node_times[0] == doctest::Approx(4 * kPi).epsilon(0.03));
    CHECK(analysis::mean_spacing(beat.node_times) == doctest::Approx(8 * kPi).epsilon(0.05));
}

TEST_CASE("V fit vertex") {
    CHECK(analysis::v_fit(1.0, 0.0, 1.0) == doctest::Approx(0.0));
    CHECK(analysis::v_fit(2.0, 0.0, 1.0) == doctest::Approx(0.25));
    CHECK(analysis::v_fit(5.0, 0.0, 0.0) == doctest::Approx(0.5));
    CHECK(analysis::mean_spacing({1.0}) == 0.0);
    CHECK(analysis::mean_spacing({1.0, 2.0, 4.0}) == doctest::Approx(1.5));
}

TEST_CASE("refined extrema of a trigonometric function") {
    const auto mins = analysis::refined_minima([](double t) { return std::cos(t); }, 0.0, 7 * kPi, 300);
    REQUIRE(mins.size() == 3);
    CHECK(mins[0] == doctest::Approx(kPi).epsilon(1e-7));
    CHECK(mins[2] == doctest::Approx(5 * kPi).epsilon(1e-7));
    const auto maxs = analysis::refined_maxima([](double t) { return std::sin(t); }, 0.0, 2 * kPi, 100);
    REQUIRE(maxs.size() == 1);
    CHECK(maxs[0] == doctest::Approx(kPi / 2).epsilon(1e-7));
}
