#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "jcm/config.hpp"
#include "jcm/errors.hpp"

using namespace jcm;
using cli::Observable;

namespace {

const char* kBase =
    "mean_n = 10\n"
    "tau_stop = 2 pi\n"
    "tau_count = 5\n"
    "observables = inversion, purity\n";

cli::ConfigFile parse(const std::string& text) {
    std::istringstream in(text);
    return cli::parse_config(in, "test");
}

ConfigError config_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("unreachable");
}

}  // namespace

TEST_CASE("minimal config resolves with defaults") {
    const auto c = parse(kBase).expand().at(0);
    CHECK(c.mean_n == 10.0);
    CHECK(c.time.stop == doctest::Approx(2 * std::numbers::pi));
    CHECK(c.time.points().size() == 5);
    CHECK(c.wants(Observable::Purity));
    CHECK_FALSE(c.wants(Observable::Entropy));
    CHECK_FALSE(c.n_max.has_value());
    CHECK(c.model.g == 1.0);
    CHECK(c.model.delta.value() == 0.0);
    CHECK(c.output_dir == "out");
}

TEST_CASE("pi expressions and comments") {
    const auto c = parse(std::string(kBase) +
                         "tau_start = pi/4   # quarter period\n"
                         "kappa = 3*pi/8\n"
                         "J = 0.5 pi\n"
                         "chi = 1/8\n"
                         "h = kerr\n")
                       .expand()
                       .at(0);
    CHECK(c.time.start == doctest::Approx(std::numbers::pi / 4));
    CHECK(c.model.kappa == doctest::Approx(3 * std::numbers::pi / 8));
    CHECK(c.model.J_ising == doctest::Approx(std::numbers::pi / 2));
    CHECK(c.model.chi == 0.125);
    CHECK(config_error(std::string(kBase) + "kappa = 1/0\n").field() == "kappa");
    CHECK(config_error(std::string(kBase) + "kappa = pi pi\n").field() == "kappa");
    CHECK(config_error(std::string(kBase) + "kappa = 8/\n").field() == "kappa");
}

TEST_CASE("errors carry line and key") {
    auto e = config_error(std::string(kBase) + "colour = blue\n");
    CHECK(e.line() == 5);
    CHECK(e.field() == "colour");

    e = config_error(std::string(kBase) + "mean_n = 4\n");
    CHECK(e.line() == 5);
    CHECK(e.field() == "mean_n");

    e = config_error("tau_stop = 1\ntau_count = 3\nobservables = inversion\n");
    CHECK(e.field() == "mean_n");

    e = config_error(std::string(kBase) + "g = fast\n");
    CHECK(e.line() == 5);
    CHECK(e.field() == "g");

    e = config_error("mean_n = 1\ntau_stop = 1\ntau_count = 0\nobservables = inversion\n");
    CHECK(e.line() == 3);
    CHECK(e.field() == "tau_count");

    e = config_error("mean_n = 1\ntau_stop = 1\ntau_count = 3\nobservables = wavefunction\n");
    CHECK(e.line() == 4);

    e = config_error(std::string(kBase) + "q_taus = 1\n");
    CHECK(e.field() == "q_taus");

    e = config_error(std::string(kBase) + "g = -1\n");
    CHECK(e.field() == "model");

    e = config_error(std::string(kBase) + "format = hdf5\n");
    CHECK(e.field() == "format");

    e = config_error(std::string(kBase) + "no equals sign\n");
    CHECK(e.line() == 5);
}

TEST_CASE("qfunction needs snapshot times") {
    const std::string q = "mean_n = 10\ntau_stop = 1\ntau_count = 2\nobservables = qfunction\n";
    CHECK(config_error(q).field() == "q_taus");
    const auto c = parse(q + "q_taus = 0, pi/4\nq_re_count = 11\n").expand().at(0);
    CHECK(c.q.taus.size() == 2);
    CHECK(c.q.re.count == 11);
    CHECK(c.q.im.count == 241);
}

TEST_CASE("delta without omega sets omega") {
    const auto c = parse(std::string(kBase) + "omega0 = 2\ndelta = 0.25\n").expand().at(0);
    CHECK(c.model.omega == doctest::Approx(2.25));
    CHECK(config_error(std::string(kBase) + "omega = 1.5\ndelta = 0.2\n").field() == "model");
}

TEST_CASE("sweeps") {
    const auto f = parse(std::string(kBase) + "sweep = chi: 0, 1/8, pi/16\nh = kerr\n");
    REQUIRE(f.sweep.has_value());
    const auto points = f.expand();
    REQUIRE(points.size() == 3);
    CHECK(points[1].model.chi == doctest::Approx(0.125));
    CHECK(points[2].model.chi == doctest::Approx(std::numbers::pi / 16));
    CHECK(config_error(std::string(kBase) + "sweep = h: kerr, standard\n").field() == "sweep");
    CHECK(config_error(std::string(kBase) + "chi = 0\nsweep = chi: 0, 1\n").field() == "chi");
    CHECK(config_error(std::string(kBase) + "sweep = chi: 0, -1\n").field() == "model");
}

TEST_CASE("describe lists every resolved key in a stable order") {
    const auto c = parse(kBase).expand().at(0);
    const auto d = c.describe();
    REQUIRE_FALSE(d.empty());
    CHECK(d == parse(kBase).expand().at(0).describe());
    bool has_mean = false;
    for (const auto& [k, v] : d)
        if (k == "mean_n") has_mean = v == "10";
    CHECK(has_mean);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.25e-5, -2.0, 1e300})
        CHECK(std::stod(cli::format_double(v)) == v);
    CHECK(cli::format_double(0.5) == "0.5");
}
