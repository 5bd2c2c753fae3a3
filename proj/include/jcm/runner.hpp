#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "jcm/config.hpp"
#include "jcm/spectral.hpp"

namespace jcm::cli {

struct RunSummary {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// n_max actually used: the configured value, or auto (raised so that the
/// Q grid stays inside the |alpha|^2 <= n_max / 2 guard).
int resolve_n_max(const RunConfig& config);

/// Runs every sweep point and writes CSV tables plus a JSON manifest under
/// output_dir. Identical configs give byte-identical files.
RunSummary run(const ConfigFile& file);

/// Single point; tag is appended to the prefix when non-empty.
RunSummary run_point(const RunConfig& config, const std::string& tag,
                     const std::string& sweep_note = {});

/// E_j, C_jk, Omega and Lambda for block n as CSV (energies in units of g).
void write_spectrum_row_header(std::ostream& out);
void write_spectrum_row(std::ostream& out, const spectral::BlockSpectrum& s, double g);
void dump_spectrum(const RunConfig& config, int n, std::ostream& out);

}  // namespace jcm::cli
