#include "jcm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "jcm/approx.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"
#include "jcm/parallel.hpp"

namespace jcm::cli {

namespace {

using Header = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& out, const Header& header) {
    for (const auto& [k, v] : header) out << "# " << k << " = " << v << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

struct Row {
    double inversion = 0.0, purity = 0.0, concurrence = 0.0, entropy = 0.0;
    double approx = 0.0;
    bool outside = false;
};

}  // namespace

int resolve_n_max(const RunConfig& c) {
    if (c.n_max) return *c.n_max;
    int n = dynamics::auto_n_max(c.mean_n);
    if (c.wants(Observable::QFunction)) {
        const double re = std::max(std::abs(c.q.re.min), std::abs(c.q.re.max));
        const double im = std::max(std::abs(c.q.im.min), std::abs(c.q.im.max));
        n = std::max(n, static_cast<int>(std::ceil(2.0 * (re * re + im * im))));
    }
    return n;
}

void write_spectrum_row_header(std::ostream& out) {
    out << "n[photons],E1[g],E2[g],E3[g]";
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) out << ",C" << j << k << "[1]";
    out << ",W21[g],W31[g],W23[g],L11[1],L22[1],L33[1],L21[1],L31[1],L23[1],fallback[flag]\n";
}

void write_spectrum_row(std::ostream& out, const spectral::BlockSpectrum& s, double g) {
    out << s.n;
    for (double e : s.energies) out << ',' << format_double(e / g);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out << ',' << format_double(s.coeffs(j, k));
    out << ',' << format_double(s.rabi.w21 / g) << ',' << format_double(s.rabi.w31 / g) << ','
        << format_double(s.rabi.w23 / g);
    const auto& l = s.lambdas;
    for (double v : {l.l11, l.l22, l.l33, l.l21, l.l31, l.l23}) out << ',' << format_double(v);
    out << ',' << (s.used_fallback ? 1 : 0) << '\n';
}

void dump_spectrum(const RunConfig& c, int n, std::ostream& out) {
    if (n < 0) throw ConfigError("block index must be >= 0", 0, "--n");
    const model::ModelParams params(c.model);
    write_header(out, c.describe());
    out << "# block = " << n << '\n';
    write_spectrum_row_header(out);
    write_spectrum_row(out, spectral::compute_spectrum(params, n), params.g());
}

RunSummary run_point(const RunConfig& c, const std::string& tag, const std::string& sweep_note) {
    RunSummary summary;
    const model::ModelParams params(c.model);
    const int n_max = resolve_n_max(c);
    params.check_tables(n_max);
    const auto field = dynamics::coherent_field(c.mean_n, c.phase, n_max, c.atom_init);
    const dynamics::AnalyticEvolution ev(spectral::compute_spectra(params, n_max), field);

    std::optional<approx::ApproxRegime> regime;
    if (c.approx != ApproxKind::None) {
        try {
            regime = c.approx == ApproxKind::KerrLocked ? approx::kerr_locked(params, c.mean_n)
                                                         : approx::standard_cavity(params, c.mean_n);
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), 0, "approx");
        }
        for (auto& w : approx::warnings(*regime)) summary.warnings.push_back(w);
    }

    Header header = c.describe();
    header.emplace_back("n_max_resolved", std::to_string(n_max));
    if (!sweep_note.empty()) header.emplace_back("sweep_point", sweep_note);
    header.emplace_back("kernel_backend", kernels::to_string(kernels::active_backend()));

    const std::filesystem::path dir(c.output_dir);
    std::filesystem::create_directories(dir);
    const std::string stem = c.output_prefix + (tag.empty() ? "" : "_" + tag);
    nlohmann::ordered_json manifest;
    manifest["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : header) manifest["config"][k] = v;
    manifest["files"] = nlohmann::ordered_json::array();

    const bool inv = c.wants(Observable::Inversion);
    const bool pur = c.wants(Observable::Purity);
    const bool con = c.wants(Observable::Concurrence);
    const bool ent = c.wants(Observable::Entropy);
    if (inv || pur || con || ent || regime) {
        const auto taus = c.time.points();
        std::vector<Row> rows(taus.size());
        const bool closed_form = c.atom_init == dynamics::AtomInit::BothExcited;
        parallel_for(taus.size(), [&](std::size_t i) {
            const double t = taus[i] / params.g();
            Row& r = rows[i];
            if (pur || con || ent || (inv && !closed_form)) {
                const auto rho = ev.atom_density(t);
                if (inv && !closed_form) r.inversion = dynamics::inversion_from_density(rho);
                if (pur) r.purity = dynamics::purity(rho);
                if (con) r.concurrence = dynamics::concurrence(rho);
                if (ent) r.entropy = dynamics::field_entropy(rho);
            }
            if (inv && closed_form) r.inversion = ev.inversion(t);
            if (regime) {
                const auto a = approx::approx_inversion(*regime, taus[i]);
                r.approx = a.value;
                r.outside = a.outside_validity;
            }
        });

        const auto path = dir / (stem + ".csv");
        auto out = open_output(path);
        write_header(out, header);
        out << "tau[gt]";
        if (inv) out << ",inversion[1]";
        if (pur) out << ",purity[1]";
        if (con) out << ",concurrence[1]";
        if (ent) out << ",entropy[nats]";
        if (regime) out << ",approx_inversion[1],approx_outside_window[flag]";
        out << '\n';
        bool any_outside = false;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const Row& r = rows[i];
            out << format_double(taus[i]);
            if (inv) out << ',' << format_double(r.inversion);
            if (pur) out << ',' << format_double(r.purity);
            if (con) out << ',' << format_double(r.concurrence);
            if (ent) out << ',' << format_double(r.entropy);
            if (regime) out << ',' << format_double(r.approx) << ',' << (r.outside ? 1 : 0);
            out << '\n';
            any_outside = any_outside || r.outside;
        }
        if (any_outside) summary.warnings.push_back("approximation evaluated beyond its validity window");
        summary.files.push_back(path);
    }

    if (c.wants(Observable::QFunction)) {
        for (std::size_t k = 0; k < c.q.taus.size(); ++k) {
            const double tau = c.q.taus[k];
            const auto grid = dynamics::husimi_grid(ev.field_density(tau / params.g()), c.q.re, c.q.im);
            const auto path = dir / (stem + "_q" + std::to_string(k) + ".csv");
            auto out = open_output(path);
            write_header(out, header);
            out << "# q_tau = " << format_double(tau) << '\n';
            out << "re[1],im[1],q[1]\n";
            for (int i = 0; i < grid.re.count; ++i)
                for (int j = 0; j < grid.im.count; ++j)
                    out << format_double(grid.re.at(i)) << ',' << format_double(grid.im.at(j)) << ','
                        << format_double(grid.at(i, j)) << '\n';
            summary.files.push_back(path);
        }
    }

    if (c.wants(Observable::SpectrumDump)) {
        const auto path = dir / (stem + "_spectrum.csv");
        auto out = open_output(path);
        write_header(out, header);
        write_spectrum_row_header(out);
        for (const auto& s : ev.spectra()) write_spectrum_row(out, s, params.g());
        summary.files.push_back(path);
    }

    for (const auto& f : summary.files) manifest["files"].push_back(f.filename().string());
    if (regime) {
        const auto ts = approx::timescales(*regime);
        manifest["timescales"] = {{"tau_collapse", ts.tau_collapse},
                                  {"tau_revival", ts.tau_revival},
                                  {"beat_period", std::isinf(ts.beat_period) ? nlohmann::ordered_json("inf")
                                                                             : nlohmann::ordered_json(ts.beat_period)}};
    }
    manifest["warnings"] = summary.warnings;
    const auto mpath = dir / (stem + "_manifest.json");
    auto mout = open_output(mpath);
    mout << manifest.dump(2) << '\n';
    summary.files.push_back(mpath);
    return summary;
}

RunSummary run(const ConfigFile& file) {
    const auto points = file.expand();
    RunSummary total;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::string tag, note;
        if (file.sweep) {
            tag = std::to_string(i);
            note = file.sweep->key + " = " + file.sweep->values[i];
        }
        auto s = run_point(points[i], tag, note);
        total.files.insert(total.files.end(), s.files.begin(), s.files.end());
        for (auto& w : s.warnings) total.warnings.push_back((note.empty() ? "" : "[" + note + "] ") + w);
    }
    return total;
}

}  // namespace jcm::cli
