#include "jcm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "jcm/errors.hpp"

namespace jcm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_plain(const std::string& s, double& v) {
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    return ec == std::errc{} && p == e;
}

// Accepts plain numbers, "a/b", and the forms "pi", "k pi", "k*pi", "pi/m", "k*pi/m".
double parse_number(const std::string& key, const Entry& e) {
    const std::string s = trim(e.value);
    double v = 0.0;
    if (parse_plain(s, v)) {
        if (!std::isfinite(v)) throw ConfigError("value must be finite", e.line, key);
        return v;
    }
    static const std::regex form(
        R"(^([-+]?[0-9.eE+-]+)?\s*(\*?\s*pi)?\s*(?:/\s*([0-9.eE+-]+))?$)");
    std::smatch m;
    if (!s.empty() && std::regex_match(s, m, form) && (m[2].matched || (m[1].matched && m[3].matched))) {
        double k = 1.0, d = 1.0;
        if (m[1].matched && !parse_plain(m[1].str(), k))
            throw ConfigError("bad number '" + s + "'", e.line, key);
        if (m[3].matched && (!parse_plain(m[3].str(), d) || d == 0.0))
            throw ConfigError("bad number '" + s + "'", e.line, key);
        v = k / d * (m[2].matched ? std::numbers::pi : 1.0);
        if (!std::isfinite(v)) throw ConfigError("value must be finite", e.line, key);
        return v;
    }
    throw ConfigError("expected a number, got '" + s + "'", e.line, key);
}

int parse_int(const std::string& key, const Entry& e) {
    const std::string s = trim(e.value);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError("expected an integer, got '" + s + "'", e.line, key);
    return v;
}

std::vector<double> parse_numbers(const std::string& key, const Entry& e) {
    std::vector<double> out;
    for (const auto& item : split_list(e.value)) out.push_back(parse_number(key, {item, e.line}));
    return out;
}

Observable parse_observable(const std::string& s, int line) {
    if (s == "inversion") return Observable::Inversion;
    if (s == "purity") return Observable::Purity;
    if (s == "concurrence") return Observable::Concurrence;
    if (s == "entropy") return Observable::Entropy;
    if (s == "qfunction") return Observable::QFunction;
    if (s == "spectrum-dump") return Observable::SpectrumDump;
    throw ConfigError("unknown observable '" + s +
                          "' (inversion|purity|concurrence|entropy|qfunction|spectrum-dump)",
                      line, "observables");
}

using Setter = std::function<void(RunConfig&, const std::string&, const Entry&)>;

template <class F>
Setter wrap_domain(F f) {
    return [f](RunConfig& c, const std::string& key, const Entry& e) {
        try {
            f(c, key, e);
        } catch (const DomainError& err) {
            throw ConfigError(err.what(), e.line, key);
        }
    };
}

struct KeyInfo {
    Setter set;
    bool numeric = false;  // may be swept
    bool required = false;
};

const std::map<std::string, KeyInfo>& key_table() {
    static const std::map<std::string, KeyInfo> table = [] {
        std::map<std::string, KeyInfo> t;
        auto num = [&](const char* name, auto member) {
            t[name] = {[member](RunConfig& c, const std::string& k, const Entry& e) {
                           member(c, parse_number(k, e));
                       },
                       true, false};
        };
        num("omega0", [](RunConfig& c, double v) { c.model.omega0 = v; });
        num("omega", [](RunConfig& c, double v) { c.model.omega = v; });
        num("delta", [](RunConfig& c, double v) { c.model.delta = v; });
        num("g", [](RunConfig& c, double v) { c.model.g = v; });
        num("kappa", [](RunConfig& c, double v) { c.model.kappa = v; });
        num("J", [](RunConfig& c, double v) { c.model.J_ising = v; });
        num("chi", [](RunConfig& c, double v) { c.model.chi = v; });
        num("mean_n", [](RunConfig& c, double v) { c.mean_n = v; });
        num("phase", [](RunConfig& c, double v) { c.phase = v; });
        num("tau_start", [](RunConfig& c, double v) { c.time.start = v; });
        num("tau_stop", [](RunConfig& c, double v) { c.time.stop = v; });
        num("q_re_min", [](RunConfig& c, double v) { c.q.re.min = v; });
        num("q_re_max", [](RunConfig& c, double v) { c.q.re.max = v; });
        num("q_im_min", [](RunConfig& c, double v) { c.q.im.min = v; });
        num("q_im_max", [](RunConfig& c, double v) { c.q.im.max = v; });
        t["mean_n"].required = true;
        t["tau_stop"].required = true;

        t["tau_count"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
                              c.time.count = parse_int(k, e);
                          },
                          false, true};
        t["q_re_count"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
                               c.q.re.count = parse_int(k, e);
                           }};
        t["q_im_count"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
                               c.q.im.count = parse_int(k, e);
                           }};
        t["n_max"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
                          if (trim(e.value) == "auto")
                              c.n_max.reset();
                          else
                              c.n_max = parse_int(k, e);
                      }};
        t["h"] = {wrap_domain([](RunConfig& c, const std::string&, const Entry& e) {
            c.model.h.kind = model::parse_field_kind(trim(e.value));
        })};
        t["f"] = {wrap_domain([](RunConfig& c, const std::string&, const Entry& e) {
            c.model.f.kind = model::parse_coupling_kind(trim(e.value));
        })};
        t["h_table"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            c.model.h.table = parse_numbers(k, e);
        }};
        t["f_table"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            c.model.f.table = parse_numbers(k, e);
        }};
        t["atom_init"] = {wrap_domain([](RunConfig& c, const std::string&, const Entry& e) {
            c.atom_init = dynamics::parse_atom_init(trim(e.value));
        })};
        t["observables"] = {[](RunConfig& c, const std::string&, const Entry& e) {
                                c.observables.clear();
                                for (const auto& item : split_list(e.value)) {
                                    const auto o = parse_observable(item, e.line);
                                    if (std::find(c.observables.begin(), c.observables.end(), o) ==
                                        c.observables.end())
                                        c.observables.push_back(o);
                                }
                            },
                            false, true};
        t["q_taus"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            c.q.taus = parse_numbers(k, e);
        }};
        t["approx"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            const auto v = trim(e.value);
            if (v == "none")
                c.approx = ApproxKind::None;
            else if (v == "standard_cavity")
                c.approx = ApproxKind::StandardCavity;
            else if (v == "kerr_locked")
                c.approx = ApproxKind::KerrLocked;
            else
                throw ConfigError("expected none|standard_cavity|kerr_locked", e.line, k);
        }};
        t["output_dir"] = {[](RunConfig& c, const std::string&, const Entry& e) {
            c.output_dir = trim(e.value);
        }};
        t["output_prefix"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            const auto v = trim(e.value);
            if (v.empty() || v.find('/') != std::string::npos)
                throw ConfigError("prefix must be a non-empty file name", e.line, k);
            c.output_prefix = v;
        }};
        t["format"] = {[](RunConfig& c, const std::string& k, const Entry& e) {
            const auto v = trim(e.value);
            if (v != "csv") throw ConfigError("only 'csv' output is supported", e.line, k);
            c.format = v;
        }};
        return t;
    }();
    return table;
}

RunConfig resolve(const std::map<std::string, Entry>& entries) {
    const auto& table = key_table();
    for (const auto& [key, info] : table)
        if (info.required && !entries.count(key))
            throw ConfigError("required key is missing", 0, key);

    RunConfig c;
    for (const auto& [key, entry] : entries) table.at(key).set(c, key, entry);

    auto line_of = [&](const char* key) {
        auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second.line;
    };

    if (c.observables.empty())
        throw ConfigError("observables list is empty", line_of("observables"), "observables");
    if (c.time.count < 1) throw ConfigError("must be >= 1", line_of("tau_count"), "tau_count");
    if (c.time.count > 1 && !(c.time.stop > c.time.start))
        throw ConfigError("time grid must be strictly increasing (tau_stop > tau_start)",
                          line_of("tau_stop"), "tau_stop");
    if (c.mean_n < 0.0) throw ConfigError("must be >= 0", line_of("mean_n"), "mean_n");
    if (c.n_max && *c.n_max < 0) throw ConfigError("must be >= 0 or auto", line_of("n_max"), "n_max");

    if (c.wants(Observable::QFunction)) {
        if (c.q.taus.empty())
            throw ConfigError("qfunction needs at least one snapshot time", line_of("q_taus"), "q_taus");
        for (const auto* ax : {&c.q.re, &c.q.im}) {
            const char* which = ax == &c.q.re ? "q_re_count" : "q_im_count";
            if (ax->count < 2) throw ConfigError("must be >= 2", line_of(which), which);
            if (!(ax->max > ax->min))
                throw ConfigError("axis max must exceed min", line_of(which), which);
        }
    } else if (entries.count("q_taus")) {
        throw ConfigError("q_taus given but qfunction is not an observable", line_of("q_taus"), "q_taus");
    }

    if (c.model.delta && !entries.count("omega")) c.model.omega = c.model.omega0 + *c.model.delta;
    try {
        model::ModelParams params(c.model);
        c.model = params.spec();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), 0, "model");
    }
    return c;
}

}  // namespace

std::string to_string(Observable o) {
    switch (o) {
        case Observable::Inversion: return "inversion";
        case Observable::Purity: return "purity";
        case Observable::Concurrence: return "concurrence";
        case Observable::Entropy: return "entropy";
        case Observable::QFunction: return "qfunction";
        case Observable::SpectrumDump: return "spectrum-dump";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, p) : std::string("nan");
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double h = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = start + i * h;
    out.back() = stop;
    return out;
}

bool RunConfig::wants(Observable o) const {
    return std::find(observables.begin(), observables.end(), o) != observables.end();
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
        return s;
    };
    std::vector<std::pair<std::string, std::string>> d;
    d.emplace_back("omega0", format_double(model.omega0));
    d.emplace_back("omega", format_double(model.omega));
    d.emplace_back("delta", format_double(model.delta.value_or(model.omega - model.omega0)));
    d.emplace_back("g", format_double(model.g));
    d.emplace_back("kappa", format_double(model.kappa));
    d.emplace_back("J", format_double(model.J_ising));
    d.emplace_back("chi", format_double(model.chi));
    d.emplace_back("h", model::to_string(model.h.kind));
    if (!model.h.table.empty()) d.emplace_back("h_table", join(model.h.table));
    d.emplace_back("f", model::to_string(model.f.kind));
    if (!model.f.table.empty()) d.emplace_back("f_table", join(model.f.table));
    d.emplace_back("mean_n", format_double(mean_n));
    d.emplace_back("phase", format_double(phase));
    d.emplace_back("n_max", n_max ? std::to_string(*n_max) : "auto");
    d.emplace_back("atom_init", dynamics::to_string(atom_init));
    d.emplace_back("tau_start", format_double(time.start));
    d.emplace_back("tau_stop", format_double(time.stop));
    d.emplace_back("tau_count", std::to_string(time.count));
    std::string obs;
    for (std::size_t i = 0; i < observables.size(); ++i) obs += (i ? ", " : "") + to_string(observables[i]);
    d.emplace_back("observables", obs);
    if (wants(Observable::QFunction)) {
        d.emplace_back("q_taus", join(q.taus));
        d.emplace_back("q_re_min", format_double(q.re.min));
        d.emplace_back("q_re_max", format_double(q.re.max));
        d.emplace_back("q_re_count", std::to_string(q.re.count));
        d.emplace_back("q_im_min", format_double(q.im.min));
        d.emplace_back("q_im_max", format_double(q.im.max));
        d.emplace_back("q_im_count", std::to_string(q.im.count));
    }
    const char* ap = approx == ApproxKind::None             ? "none"
                     : approx == ApproxKind::StandardCavity ? "standard_cavity"
                                                            : "kerr_locked";
    d.emplace_back("approx", ap);
    d.emplace_back("output_dir", output_dir);
    d.emplace_back("output_prefix", output_prefix);
    d.emplace_back("format", format);
    return d;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, info] : key_table()) k.push_back(name);
        k.push_back("sweep");
        return k;
    }();
    return keys;
}

std::vector<RunConfig> ConfigFile::expand() const {
    if (!sweep) return {resolve(entries)};
    std::vector<RunConfig> out;
    for (const auto& v : sweep->values) {
        auto e = entries;
        e[sweep->key] = {v, sweep->line};
        out.push_back(resolve(e));
    }
    return out;
}

ConfigFile parse_config(std::istream& in, const std::string& source) {
    ConfigFile file;
    file.source = source;
    const auto& table = key_table();
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line);

        if (key == "sweep") {
            if (file.sweep) throw ConfigError("only one sweep is allowed", line, key);
            const auto colon = value.find(':');
            if (colon == std::string::npos)
                throw ConfigError("expected 'sweep = key: v1, v2, ...'", line, key);
            Sweep s{trim(value.substr(0, colon)), split_list(value.substr(colon + 1)), line};
            auto it = table.find(s.key);
            if (it == table.end()) throw ConfigError("unknown sweep key '" + s.key + "'", line, key);
            if (!it->second.numeric)
                throw ConfigError("sweep key '" + s.key + "' is not a numeric parameter", line, key);
            if (s.values.empty()) throw ConfigError("sweep has no values", line, key);
            for (const auto& v : s.values) parse_number(s.key, {v, line});
            file.sweep = std::move(s);
            continue;
        }
        if (!table.count(key)) throw ConfigError("unknown key", line, key);
        if (file.entries.count(key))
            throw ConfigError("duplicate key (first on line " +
                                  std::to_string(file.entries[key].line) + ")",
                              line, key);
        file.entries[key] = {value, line};
    }
    if (file.sweep && file.entries.count(file.sweep->key))
        throw ConfigError("swept key is also set directly", file.sweep->line, file.sweep->key);

    // Resolve once so that every error surfaces at load time.
    if (file.sweep) {
        file.expand();
    } else {
        resolve(file.entries);
    }
    return file;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, path.string());
}

}  // namespace jcm::cli
