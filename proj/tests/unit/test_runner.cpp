#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "jcm/config.hpp"
#include "jcm/errors.hpp"
#include "jcm/runner.hpp"

using namespace jcm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("jcm_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

cli::ConfigFile parse(const std::string& text) {
    std::istringstream in(text);
    return cli::parse_config(in, "test");
}

std::string config_text(const fs::path& dir) {
    return "f = buck_sukumar\nkappa = 1/8\nmean_n = 10\ntau_stop = 2 pi\ntau_count = 41\n"
           "observables = inversion, purity, concurrence, entropy, qfunction, spectrum-dump\n"
           "q_taus = 0, pi/4\nq_re_count = 9\nq_im_count = 7\napprox = standard_cavity\n"
           "output_dir = " +
           dir.string() + "\noutput_prefix = t\n";
}

}  // namespace

TEST_CASE("run writes the requested tables and identical reruns are byte-identical") {
    TempDir a("run_a");
    const auto sa = cli::run(parse(config_text(a.path)));
    REQUIRE(sa.files.size() == 5);  // series, two Q snapshots, spectrum, manifest
    std::vector<std::string> first;
    for (const auto& f : sa.files) first.push_back(slurp(f));
    const auto sb = cli::run(parse(config_text(a.path)));
    REQUIRE(sb.files == sa.files);
    for (std::size_t i = 0; i < sa.files.size(); ++i) CHECK(slurp(sb.files[i]) == first[i]);
    const auto series = slurp(a.path / "t.csv");
    CHECK(series.find("tau[gt],inversion[1],purity[1],concurrence[1],entropy[nats],approx_inversion[1]") !=
          std::string::npos);
    CHECK(series.find("# mean_n = 10") != std::string::npos);
    std::istringstream lines(series);
    std::string line;
    int data = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line[0] != 't') ++data;
    CHECK(data == 41);
    CHECK(slurp(a.path / "t_q1.csv").find("# q_tau = 0.7853981633974483") != std::string::npos);

    const auto manifest = nlohmann::json::parse(slurp(a.path / "t_manifest.json"));
    CHECK(manifest["files"].size() == 4);
    CHECK(manifest["timescales"]["tau_revival"].get<double>() == doctest::Approx(3.14159265));
}

TEST_CASE("first row of the series starts at the initial state") {
    TempDir d("run_first_row");
    cli::run(parse(config_text(d.path)));
    std::istringstream lines(slurp(d.path / "t.csv"));
    std::string line;
    while (std::getline(lines, line) && (line[0] == '#' || line[0] == 't')) {
    }
    std::vector<double> v;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) v.push_back(std::stod(cell));
    const std::vector<double> expected{0, 1, 1, 0, 0, 1, 0};
    REQUIRE(v.size() == expected.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - expected[i]) < 1e-12);
}

TEST_CASE("sweep points get tagged file names") {
    TempDir d("run_sweep");
    const auto text = "kappa = 0.1\nmean_n = 5\ntau_stop = 1\ntau_count = 3\nobservables = inversion\n"
                      "sweep = J: 0, 0.05\noutput_dir = " +
                      d.path.string() + "\n";
    const auto s = cli::run(parse(text));
    CHECK(fs::exists(d.path / "run_0.csv"));
    CHECK(fs::exists(d.path / "run_1.csv"));
    CHECK(slurp(d.path / "run_1.csv").find("# sweep_point = J = 0.05") != std::string::npos);
    CHECK(s.warnings.empty());
}

TEST_CASE("auto n_max is raised to cover the phase-space window") {
    const auto c = parse("mean_n = 10\ntau_stop = 1\ntau_count = 2\nobservables = qfunction\nq_taus = 0\n")
                       .expand()
                       .at(0);
    CHECK(cli::resolve_n_max(c) == 144);
    const auto small = parse("mean_n = 10\ntau_stop = 1\ntau_count = 2\nobservables = inversion\n")
                           .expand()
                           .at(0);
    CHECK(cli::resolve_n_max(small) == 68);
}

TEST_CASE("approximation regime mismatch is a config error") {
    TempDir d("run_regime");
    const auto text = "f = linear\nmean_n = 5\ntau_stop = 1\ntau_count = 3\nobservables = inversion\n"
                      "approx = standard_cavity\noutput_dir = " +
                      d.path.string() + "\n";
    CHECK_THROWS_AS(cli::run(parse(text)), ConfigError);
}

TEST_CASE("dump_spectrum prints one block") {
    const auto c = parse("f = buck_sukumar\nmean_n = 10\ntau_stop = 1\ntau_count = 2\nobservables = inversion\n")
                       .expand()
                       .at(0);
    std::ostringstream out;
    cli::dump_spectrum(c, 3, out);
    const auto text = out.str();
    CHECK(text.find("# block = 3") != std::string::npos);
    CHECK(text.find("n[photons],E1[g],E2[g],E3[g]") != std::string::npos);
    CHECK(text.find("\n3,") != std::string::npos);
    std::ostringstream bad;
    CHECK_THROWS_AS(cli::dump_spectrum(c, -1, bad), ConfigError);
}
