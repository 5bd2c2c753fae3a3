// jcm: command-line front end.
//   jcm run <config>
//   jcm validate --level fast|full [--fixture-dir DIR] [--report json]
//   jcm dump-spectrum --n <k> <config>
// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical guard.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jcm/config.hpp"
#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"
#include "jcm/runner.hpp"
#include "jcm/validation.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kConfig = 2, kNumerical = 3 };

#ifndef JCM_DEFAULT_FIXTURE_DIR
#define JCM_DEFAULT_FIXTURE_DIR "tests/fixtures"
#endif

int cmd_run(const std::string& path) {
    const auto file = jcm::cli::load_config(path);
    const auto summary = jcm::cli::run(file);
    for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : summary.files) std::cout << f.string() << '\n';
    return kOk;
}

int cmd_dump(const std::string& path, int n) {
    const auto file = jcm::cli::load_config(path);
    for (const auto& point : file.expand()) jcm::cli::dump_spectrum(point, n, std::cout);
    return kOk;
}

int cmd_validate(const std::string& level, const std::string& fixture_dir, const std::string& report) {
    namespace v = jcm::validation;
    v::Options options;
    options.level = level == "fast" ? v::Level::Fast : v::Level::Full;
    options.fixture_dir = fixture_dir;
    const auto results = v::validate(options);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    if (report == "json") {
        std::cout << v::report_json(results, options.level) << '\n';
    } else {
        for (const auto& r : results)
            std::printf("[%s] %-8s %s: %s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                        r.name.c_str(), r.detail.c_str(), r.seconds);
        std::printf("%s\n", ok ? "validation passed" : "validation FAILED");
    }
    return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear two-atom Jaynes-Cummings engine"};
    app.require_subcommand(1);
    std::string backend = "auto";
    app.add_option("--kernels", backend, "Kernel backend")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    std::string config_path;
    auto* run = app.add_subcommand("run", "Evolve the configured system and write CSV output");
    run->add_option("config", config_path, "Config file")->required();

    std::string level = "fast", fixture_dir = JCM_DEFAULT_FIXTURE_DIR, report = "text";
    auto* validate = app.add_subcommand("validate", "Run the built-in validation suite");
    validate->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    validate->add_option("--fixture-dir", fixture_dir, "Directory holding approx_tolerance.json");
    validate->add_option("--report", report, "text or json")->check(CLI::IsMember({"text", "json"}));

    int block = 0;
    std::string dump_path;
    auto* dump = app.add_subcommand("dump-spectrum", "Print the spectrum of one photon block");
    dump->add_option("--n", block, "Photon block index")->required();
    dump->add_option("config", dump_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (backend == "scalar") jcm::kernels::set_backend(jcm::kernels::Backend::Scalar);
        if (backend == "avx2") jcm::kernels::set_backend(jcm::kernels::Backend::Avx2);
        if (*run) return cmd_run(config_path);
        if (*dump) return cmd_dump(dump_path, block);
        return cmd_validate(level, fixture_dir, report);
    } catch (const jcm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const jcm::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const jcm::validation::FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical guard: " << e.what() << '\n';
        return kNumerical;
    }
}
