#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jcm/errors.hpp"

namespace jcm::validation {

/// Missing, unparsable or tampered fixture file.
class FixtureError : public Error {
public:
    using Error::Error;
};

struct CheckResult {
    std::string id;  // "1".."11" for acceptance criteria, names for extra suites
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

enum class Level { Fast, Full };

struct Options {
    Level level = Level::Full;
    std::filesystem::path fixture_dir;
    std::uint64_t seed = 0x5eed2024ULL;
};

/// Tolerance for the standard-cavity approximation, produced by tools/make_fixture.
struct ApproxFixture {
    double max_abs_deviation = 0.0;
    double safety_factor = 1.2;
    double tolerance = 0.0;
    int points = 0;
    int n_max = 0;
};

inline constexpr const char* kFixtureName = "approx_tolerance.json";

std::string fnv1a64_hex(std::string_view data);

/// Reads and integrity-checks the fixture; throws FixtureError on any problem.
ApproxFixture load_fixture(const std::filesystem::path& path);
void write_fixture(const std::filesystem::path& path, const ApproxFixture& fixture);

/// Oracle run behind the fixture: BuckSukumar, (kappa - J)/g = 1/8, chi = 0,
/// <n> = 20, both atoms excited, 20001 points over gt in [0, 16 pi].
ApproxFixture compute_fixture_with_oracle();

// Acceptance criteria; draws applies to the random-parameter suites.
CheckResult check_spectral_correctness(int draws, std::uint64_t seed);
CheckResult check_frequency_identities(int draws, std::uint64_t seed);
CheckResult check_t0_anchors();
CheckResult check_shift_invariance();
CheckResult check_oracle_equivalence();
CheckResult check_revival_features();
CheckResult check_approx_agreement(const std::filesystem::path& fixture_dir);
CheckResult check_kerr_beat();
CheckResult check_entropy_structure();
CheckResult check_concurrence_maxima();
CheckResult check_qfunction();

// Extra suites used by `validate`.
CheckResult check_fixture_integrity(const std::filesystem::path& fixture_dir);
CheckResult check_kernel_equivalence(std::uint64_t seed);
CheckResult check_small_oracle();

/// All eleven acceptance criteria at full density.
std::vector<CheckResult> acceptance_suite(const Options& options);

/// fast: identity suites on 1e3 draws, anchors, invariance, kernels, fixture integrity
/// and a small oracle run. full: the acceptance suite plus those extras.
std::vector<CheckResult> validate(const Options& options);

std::string report_json(const std::vector<CheckResult>& results, Level level);

}  // namespace jcm::validation
