#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jcm/dynamics.hpp"
#include "jcm/model.hpp"

namespace jcm::cli {

enum class Observable { Inversion, Purity, Concurrence, Entropy, QFunction, SpectrumDump };

std::string to_string(Observable o);

enum class ApproxKind { None, StandardCavity, KerrLocked };

/// Points in tau = g t.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> points() const;
};

struct QSpec {
    dynamics::Axis re;
    dynamics::Axis im;
    std::vector<double> taus;  // snapshot times in tau = g t
};

/// Raw "key = value" entry with its source line.
struct Entry {
    std::string value;
    int line = 0;
};

struct Sweep {
    std::string key;
    std::vector<std::string> values;
    int line = 0;
};

/// Fully resolved run description for one parameter point.
struct RunConfig {
    model::ModelSpec model;
    double mean_n = 0.0;
    double phase = 0.0;
    std::optional<int> n_max;  // empty = auto
    dynamics::AtomInit atom_init = dynamics::AtomInit::BothExcited;
    TimeGrid time;
    std::vector<Observable> observables;
    QSpec q;
    ApproxKind approx = ApproxKind::None;
    std::string output_dir = "out";
    std::string output_prefix = "run";
    std::string format = "csv";

    bool wants(Observable o) const;
    /// Resolved key/value pairs in a fixed order, for output headers.
    std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Parsed file: entries plus an optional one-key sweep.
struct ConfigFile {
    std::map<std::string, Entry> entries;
    std::optional<Sweep> sweep;
    std::string source;

    /// One resolved RunConfig per sweep value (or a single one).
    std::vector<RunConfig> expand() const;
};

/// Syntax: one "key = value" per line, '#' starts a comment, blank lines ignored.
/// "sweep = key: v1, v2, ..." repeats the run for each value of a numeric key.
/// Unknown or duplicate keys, bad values and missing required keys throw ConfigError.
ConfigFile parse_config(std::istream& in, const std::string& source = "<config>");
ConfigFile load_config(const std::filesystem::path& path);

/// Keys accepted in a config file.
const std::vector<std::string>& known_keys();

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace jcm::cli
