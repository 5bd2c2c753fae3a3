// Generates the approximation tolerance fixture from the exact oracle.
// Usage: make_fixture [output.json]

#include <cstdio>
#include <exception>
#include <filesystem>

#include "jcm/validation.hpp"

int main(int argc, char** argv) {
    namespace v = jcm::validation;
    const std::filesystem::path out = argc > 1 ? argv[1] : "tests/fixtures/" + std::string(v::kFixtureName);
    try {
        const auto f = v::compute_fixture_with_oracle();
        v::write_fixture(out, f);
        const auto check = v::load_fixture(out);
        std::printf("max deviation %.9g, tolerance %.4g, n_max %d, %d points -> %s\n",
                    check.max_abs_deviation, check.tolerance, check.n_max, check.points,
                    out.string().c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "make_fixture: %s\n", e.what());
        return 1;
    }
    return 0;
}
