// Runs the eleven acceptance criteria; one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "jcm/kernels.hpp"
#include "jcm/validation.hpp"

int main() {
    namespace v = jcm::validation;
    v::Options options;
    options.fixture_dir = JCM_FIXTURE_DIR;
    std::printf("kernel backend: %s\n", jcm::kernels::to_string(jcm::kernels::active_backend()).c_str());
    int failed = 0;
    for (const auto& r : v::acceptance_suite(options)) {
        std::printf("criterion %-2s %s  %s: %s (%.1f s)\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
