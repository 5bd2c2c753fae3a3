#include "jcm/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "jcm/analysis.hpp"
#include "jcm/approx.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/kernels.hpp"
#include "jcm/oracle.hpp"
#include "jcm/parallel.hpp"

namespace jcm::validation {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kApproxPoints = 20001;

template <typename... Args>
std::string fmt(const char* format, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

CheckResult timed(std::string id, std::string name, const std::function<void(CheckResult&)>& body) {
    CheckResult r{std::move(id), std::move(name), false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

model::ModelParams buck_sukumar(double kappa, double J, double chi = 0.0,
                                model::FieldKind h = model::FieldKind::Standard) {
    model::ModelSpec s;
    s.g = 1.0;
    s.kappa = kappa;
    s.J_ising = J;
    s.chi = chi;
    s.h.kind = h;
    s.f.kind = model::CouplingKind::BuckSukumar;
    return model::ModelParams(s);
}

// (kappa - J)/g = 1/8, chi = 0, <n> = 20
model::ModelParams standard_cavity_params() { return buck_sukumar(0.125, 0.0); }

// chi/g = 2 (kappa - J)/g = 1/32, <n> = 20
model::ModelParams kerr_locked_params() {
    return buck_sukumar(1.0 / 64.0, 0.0, 1.0 / 32.0, model::FieldKind::Kerr);
}

dynamics::AnalyticEvolution make_evolution(const model::ModelParams& p, double mean_n,
                                           dynamics::AtomInit init = dynamics::AtomInit::BothExcited,
                                           int n_max = 0) {
    if (n_max == 0) n_max = dynamics::auto_n_max(mean_n);
    return dynamics::AnalyticEvolution(spectral::compute_spectra(p, n_max),
                                       dynamics::coherent_field(mean_n, 0.0, n_max, init));
}

std::vector<double> inversion_series(const dynamics::AnalyticEvolution& ev,
                                     const std::vector<double>& t) {
    std::vector<double> y(t.size());
    parallel_for(t.size(), [&](std::size_t i) { y[i] = ev.inversion(t[i]); });
    return y;
}

// g log-uniform in [1e-4, 1]; chi/g in [0, 1]; (kappa - J)/g in [0, 1.5]; J/g, delta/g in
// [-1, 1]; n in [0, 100]; coupling alternates between Linear and BuckSukumar.
std::pair<model::ModelParams, int> draw(std::mt19937_64& rng, int index) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> photon(0, 100);
    model::ModelSpec s;
    s.g = std::pow(10.0, -4.0 * unit(rng));
    s.chi = s.g * unit(rng);
    const double kmj = 1.5 * s.g * unit(rng);
    s.J_ising = s.g * (2.0 * unit(rng) - 1.0);
    s.kappa = s.J_ising + kmj;
    s.omega0 = 1.0;
    s.omega = 1.0 + s.g * (2.0 * unit(rng) - 1.0);
    s.h.kind = model::FieldKind::Kerr;
    s.f.kind = index % 2 ? model::CouplingKind::BuckSukumar : model::CouplingKind::Linear;
    const int n = photon(rng);
    return {model::ModelParams(s), n};
}

double ceil_two_significant(double v) {
    if (v <= 0.0) return 0.0;
    const double scale = std::pow(10.0, std::floor(std::log10(v)) - 1.0);
    return std::ceil(v / scale - 1e-9) * scale;
}

nlohmann::json fixture_payload(const ApproxFixture& f) {
    return {
        {"quantity", "max |standard-cavity approximation - exact inversion| over gt in [0, 16 pi]"},
        {"config",
         {{"f", "buck_sukumar"},
          {"kappa_minus_J_over_g", 0.125},
          {"chi", 0.0},
          {"delta", 0.0},
          {"mean_n", 20.0},
          {"atom_init", "both_excited"},
          {"tau_start", 0.0},
          {"tau_stop_over_pi", 16.0},
          {"points", f.points},
          {"n_max", f.n_max}}},
        {"generator", "make_fixture: exact sector propagation of the full truncated Hamiltonian"},
        {"max_abs_deviation", f.max_abs_deviation},
        {"safety_factor", f.safety_factor},
        {"tolerance", f.tolerance},
    };
}

std::string join_pi(const std::vector<double>& times, double unit, const char* unit_name) {
    std::string s;
    for (double t : times) s += (s.empty() ? "" : " ") + fmt("%.3f", t / unit);
    return "[" + s + "] " + unit_name;
}

}  // namespace

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt("%016llx", static_cast<unsigned long long>(h));
}

ApproxFixture load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError("fixture '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("checksum") || !j["checksum"].is_string())
        throw FixtureError("fixture '" + path.string() + "' has no checksum");
    const std::string stored = j["checksum"];
    j.erase("checksum");
    const std::string actual = "fnv1a64:" + fnv1a64_hex(j.dump());
    if (stored != actual)
        throw FixtureError("fixture '" + path.string() + "' checksum mismatch (stored " + stored +
                           ", computed " + actual + ")");
    ApproxFixture f;
    try {
        f.max_abs_deviation = j.at("max_abs_deviation").get<double>();
        f.safety_factor = j.at("safety_factor").get<double>();
        f.tolerance = j.at("tolerance").get<double>();
        f.points = j.at("config").at("points").get<int>();
        f.n_max = j.at("config").at("n_max").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError("fixture '" + path.string() + "' is missing fields: " + e.what());
    }
    if (!(f.tolerance > 0.0) || f.tolerance < f.max_abs_deviation)
        throw FixtureError("fixture '" + path.string() + "' has an inconsistent tolerance");
    return f;
}

void write_fixture(const std::filesystem::path& path, const ApproxFixture& fixture) {
    nlohmann::json j = fixture_payload(fixture);
    j["checksum"] = "fnv1a64:" + fnv1a64_hex(j.dump());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FixtureError("cannot write fixture '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

ApproxFixture compute_fixture_with_oracle() {
    const auto params = standard_cavity_params();
    const double mean_n = 20.0;
    ApproxFixture f;
    f.n_max = dynamics::auto_n_max(mean_n);
    f.points = kApproxPoints;
    const auto field = dynamics::coherent_field(mean_n, 0.0, f.n_max);
    const oracle::SectorPropagator prop(oracle::build_joint_hamiltonian(params, f.n_max), f.n_max);
    const auto psi0 = oracle::initial_state(field);
    const auto regime = approx::standard_cavity(params, mean_n);
    const auto t = analysis::linspace(0.0, 16.0 * kPi, f.points);
    std::vector<double> dev(t.size());
    parallel_for(t.size(), [&](std::size_t i) {
        const auto psi = prop.evolve(psi0, t[i]);
        oracle::check_buffer(psi);
        dev[i] = std::abs(approx::standard_approx_inversion(regime, t[i]).value - oracle::inversion(psi));
    });
    f.max_abs_deviation = *std::max_element(dev.begin(), dev.end());
    f.tolerance = ceil_two_significant(f.safety_factor * f.max_abs_deviation);
    return f;
}

CheckResult check_spectral_correctness(int draws, std::uint64_t seed) {
    return timed("1", "spectral correctness (Cardano vs Jacobi, invariants)", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        double worst_eig = 0.0, worst_inv = 0.0;
        for (int d = 0; d < draws; ++d) {
            const auto [p, n] = draw(rng, d);
            const auto block = model::build_block(p, n);
            const auto spec = spectral::compute_spectrum(p, n);
            const auto jac = oracle::jacobi_max_pivot(block.matrix);
            const double norm = std::max(std::abs(jac.values(0)), std::abs(jac.values(2)));
            std::array<double, 3> e = spec.energies;
            std::sort(e.begin(), e.end());
            double err = 0.0;
            for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(e[k] - jac.values(k)));
            worst_eig = std::max(worst_eig, err / std::max(1.0, norm));

            const auto& c = spec.cardano;
            const double sum = e[0] + e[1] + e[2];
            const double pair = e[0] * e[1] + e[0] * e[2] + e[1] * e[2];
            const double prod = e[0] * e[1] * e[2];
            const double n1 = std::max(norm, 1e-300);
            worst_inv = std::max({worst_inv, std::abs(sum + c.beta) / n1,
                                  std::abs(pair - c.gamma) / (n1 * n1),
                                  std::abs(prod + c.eta) / (n1 * n1 * n1)});
        }
        r.passed = worst_eig < 1e-9 && worst_inv < 1e-9;
        r.detail = fmt("%d draws; max eigenvalue error %.2e (limit 1e-9 max(1,|H|)); "
                       "max invariant error %.2e relative (limit 1e-9)",
                       draws, worst_eig, worst_inv);
    });
}

CheckResult check_frequency_identities(int draws, std::uint64_t seed) {
    return timed("2", "frequency identities", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        double worst_sum = 0.0, worst_quad = 0.0;
        for (int d = 0; d < draws; ++d) {
            const auto [p, n] = draw(rng, d);
            const auto spec = spectral::compute_spectrum(p, n);
            const double q12 = 12.0 * std::abs(spec.cardano.Q);
            for (const auto& w : {spec.rabi, spectral::rabi_frequencies_trig(spec.cardano)}) {
                worst_sum = std::max(worst_sum, std::abs(w.w21 - w.w23 - w.w31) / w.w21);
                const double lhs = (w.w23 + 2.0 * w.w31) * (w.w23 + 2.0 * w.w31) / 3.0 + w.w23 * w.w23;
                worst_quad = std::max(worst_quad, std::abs(lhs - q12) / q12);
            }
        }
        r.passed = worst_sum < 1e-9 && worst_quad < 1e-9;
        r.detail = fmt("%d draws; W21 = W23 + W31 max rel error %.2e; quadratic identity max rel "
                       "error %.2e (limit 1e-9)",
                       draws, worst_sum, worst_quad);
    });
}

CheckResult check_t0_anchors() {
    return timed("3", "t = 0 anchors", [&](CheckResult& r) {
        struct Case {
            model::ModelParams params;
            double mean_n;
        };
        const std::vector<Case> cases{{standard_cavity_params(), 20.0},
                                      {kerr_locked_params(), 20.0},
                                      {buck_sukumar(0.0, 0.0), 10.0},
                                      {buck_sukumar(0.5, 0.25), 10.0}};
        double worst = 0.0;
        for (const auto& c : cases) {
            const auto ee = make_evolution(c.params, c.mean_n);
            const auto rho = ee.atom_density(0.0);
            worst = std::max({worst, std::abs(ee.inversion(0.0) - 1.0),
                              std::abs(dynamics::inversion_from_density(rho) - 1.0),
                              std::abs(dynamics::purity(rho) - 1.0),
                              std::abs(ee.purity_closed_form(0.0) - 1.0),
                              std::abs(dynamics::field_entropy(rho)),
                              std::abs(dynamics::concurrence(rho))});
            const auto sym = make_evolution(c.params, c.mean_n, dynamics::AtomInit::Symmetric);
            const auto rs = sym.atom_density(0.0);
            worst = std::max({worst, std::abs(dynamics::purity(rs) - 1.0),
                              std::abs(dynamics::field_entropy(rs)),
                              std::abs(dynamics::concurrence(rs) - 1.0)});
        }
        r.passed = worst < 1e-10;
        r.detail = fmt("%zu parameter sets x 2 initial states; max deviation %.2e (limit 1e-10)",
                       cases.size(), worst);
    });
}

CheckResult check_shift_invariance() {
    return timed("4", "shift invariance in (kappa, J)", [&](CheckResult& r) {
        const auto a = make_evolution(buck_sukumar(0.25, 0.0), 10.0);
        const auto b = make_evolution(buck_sukumar(0.5, 0.25), 10.0);
        const auto t = analysis::linspace(0.0, 2.0 * kPi, 200);
        double d_inv = 0.0, d_pur = 0.0, d_ent = 0.0;
        for (double ti : t) {
            const auto ra = a.atom_density(ti);
            const auto rb = b.atom_density(ti);
            d_inv = std::max(d_inv, std::abs(a.inversion(ti) - b.inversion(ti)));
            d_pur = std::max(d_pur, std::abs(dynamics::purity(ra) - dynamics::purity(rb)));
            d_ent = std::max(d_ent, std::abs(dynamics::field_entropy(ra) - dynamics::field_entropy(rb)));
        }
        r.passed = std::max({d_inv, d_pur, d_ent}) < 1e-12;
        r.detail = fmt("max |diff| inversion %.2e, purity %.2e, entropy %.2e (limit 1e-12)", d_inv,
                       d_pur, d_ent);
    });
}

CheckResult check_oracle_equivalence() {
    return timed("5", "oracle equivalence (sector exponentiation, RK4)", [&](CheckResult& r) {
        const auto start = std::chrono::steady_clock::now();
        const auto params = standard_cavity_params();
        const double mean_n = 20.0;
        const int n_max = dynamics::auto_n_max(mean_n);
        const auto field = dynamics::coherent_field(mean_n, 0.0, n_max);
        const dynamics::AnalyticEvolution ev(spectral::compute_spectra(params, n_max), field);
        const auto h = oracle::build_joint_hamiltonian(params, n_max);
        const oracle::SectorPropagator prop(h, n_max);
        const auto csr = oracle::CsrMatrix::from_dense(h);
        const auto psi0 = oracle::initial_state(field);
        const auto t = analysis::linspace(0.0, 16.0 * kPi, 500);

        double d_sector = 0.0;
        for (double ti : t) {
            const auto psi = prop.evolve(psi0, ti);
            oracle::check_buffer(psi);
            d_sector = std::max(d_sector, std::abs(oracle::inversion(psi) - ev.inversion(ti)));
        }
        double d_rk4 = 0.0, prev = 0.0;
        auto psi = psi0;
        for (double ti : t) {
            psi = oracle::evolve_numeric(csr, psi, ti - prev, 1e-4);
            prev = ti;
            d_rk4 = std::max(d_rk4, std::abs(oracle::inversion(psi) - ev.inversion(ti)));
        }
        oracle::check_buffer(psi);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.passed = d_sector < 1e-8 && d_rk4 < 1e-6 && secs < 300.0;
        r.detail = fmt("n_max %d; max |diff| sector %.2e (limit 1e-8), RK4 dt=1e-4/g %.2e "
                       "(limit 1e-6); %.1f s (limit 300 s)",
                       n_max, d_sector, d_rk4, secs);
    });
}

CheckResult check_revival_features() {
    return timed("6", "collapse, revival and beat features", [&](CheckResult& r) {
        const auto ev = make_evolution(standard_cavity_params(), 20.0);
        const auto x = analysis::linspace(0.0, 16.0 * kPi, 25001);
        const auto y = inversion_series(ev, x);
        const double off = ev.inversion_offset();
        const auto rev = analysis::detect_revivals(x, y, off);
        const auto env = analysis::peak_envelope(x, y, off);
        const double width = analysis::first_crossing_below(x, env, std::exp(-1.0));
        const auto beat = analysis::detect_beat_nodes(x, y, off, rev.spacing);
        const double target_w = 1.0 / std::sqrt(40.0);
        const double node = beat.node_times.empty() ? std::nan("") : beat.node_times.front();
        const bool ok_spacing = std::abs(rev.spacing - kPi) <= 0.1 * kPi;
        const bool ok_width = std::abs(width - target_w) <= 0.5 * target_w;
        const bool ok_node = std::abs(node - 4.0 * kPi) <= 0.05 * 4.0 * kPi;
        r.passed = ok_spacing && ok_width && ok_node;
        r.detail = fmt("revival spacing %.4f (pi +- 10%%) %s; collapse width %.4f (%.4f +- 50%%) %s; "
                       "first node %.3f pi (4 pi +- 5%%) %s",
                       rev.spacing, ok_spacing ? "ok" : "FAIL", width, target_w,
                       ok_width ? "ok" : "FAIL", node / kPi, ok_node ? "ok" : "FAIL");
    });
}

CheckResult check_approx_agreement(const std::filesystem::path& fixture_dir) {
    return timed("7", "standard-cavity approximation agreement", [&](CheckResult& r) {
        const auto fixture = load_fixture(fixture_dir / kFixtureName);
        const auto params = standard_cavity_params();
        const auto ev = make_evolution(params, 20.0);
        const auto regime = approx::standard_cavity(params, 20.0);
        auto max_dev = [&](double a, double b) {
            const auto t = analysis::linspace(a, b, kApproxPoints);
            const auto y = inversion_series(ev, t);
            double m = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i)
                m = std::max(m, std::abs(approx::standard_approx_inversion(regime, t[i]).value - y[i]));
            return m;
        };
        const double near = max_dev(0.0, 16.0 * kPi);
        const double far = max_dev(412.0 * kPi, 420.0 * kPi);
        r.passed = near < fixture.tolerance && far > fixture.tolerance;
        r.detail = fmt("max |approx - exact| on [0, 16 pi] %.4f, on [412 pi, 420 pi] %.4f; "
                       "fixture tolerance %.4g (needs near < tol < far)",
                       near, far, fixture.tolerance);
    });
}

CheckResult check_kerr_beat() {
    return timed("8", "Kerr beat period", [&](CheckResult& r) {
        const auto ev = make_evolution(kerr_locked_params(), 20.0);
        const auto x = analysis::linspace(0.0, 30.0 * kPi, 40001);
        const auto y = inversion_series(ev, x);
        const double off = ev.inversion_offset();
        const auto rev = analysis::detect_revivals(x, y, off);
        const auto beat = analysis::detect_beat_nodes(x, y, off, rev.spacing);
        const double target = 32.0 * kPi / 3.0;
        const double spacing = analysis::mean_spacing(beat.node_times);
        r.passed = beat.node_times.size() >= 2 && std::abs(spacing - target) <= 0.1 * target;
        r.detail = fmt("nodes %s; mean spacing %.3f pi (target %.3f pi +- 10%%)",
                       join_pi(beat.node_times, kPi, "pi").c_str(), spacing / kPi, target / kPi);
    });
}

CheckResult check_entropy_structure() {
    return timed("9", "entropy structure (symmetric start)", [&](CheckResult& r) {
        const auto ev = make_evolution(buck_sukumar(0.0, 0.0), 10.0, dynamics::AtomInit::Symmetric);
        auto entropy = [&](double t) { return dynamics::field_entropy(ev.atom_density(t)); };
        const auto mins = analysis::refined_minima(entropy, 0.01, 2.0 * kPi + 0.4, 2201);
        int matched = 0;
        std::string missing;
        for (int m = 1; m <= 8; ++m) {
            const double target = m * kPi / 4.0;
            const bool hit = std::any_of(mins.begin(), mins.end(),
                                         [&](double t) { return std::abs(t - target) <= 0.1; });
            if (hit)
                ++matched;
            else
                missing += fmt(" %d", m);
        }
        double lo = 0.0, hi = 0.0;
        for (double t : analysis::linspace(0.0, 2.0 * kPi, 2001)) {
            const double s = entropy(t);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        double araki = 0.0;
        for (double t : analysis::linspace(0.0, 2.0 * kPi, 100)) {
            const double sa = entropy(t);
            const double sf = dynamics::von_neumann_entropy(ev.field_density(t));
            araki = std::max(araki, std::abs(sa - sf));
        }
        const bool bounded = lo >= 0.0 && hi <= std::log(3.0) + 1e-12;
        r.passed = matched == 8 && bounded && araki < 1e-8;
        r.detail = fmt("minima at m pi/4 matched %d/8%s; minima %s; S in [%.3g, %.4f] (ln 3 = %.4f); "
                       "max |S_A - S_F| %.2e (limit 1e-8)",
                       matched, missing.empty() ? "" : (" missing m =" + missing).c_str(),
                       join_pi(mins, kPi / 4.0, "pi/4").c_str(), lo, hi, std::log(3.0), araki);
    });
}

CheckResult check_concurrence_maxima() {
    return timed("10", "concurrence maxima near multiples of pi/2 (symmetric start)", [&](CheckResult& r) {
        const auto ev = make_evolution(buck_sukumar(0.25, 0.0), 10.0, dynamics::AtomInit::Symmetric);
        auto conc = [&](double t) { return dynamics::concurrence(ev.atom_density(t)); };
        const auto maxima = analysis::refined_maxima(conc, 0.0, 2.0 * kPi + 0.3, 2201);
        int matched = 0;
        std::string missing;
        for (int m = 1; m <= 4; ++m) {
            const double target = m * kPi / 2.0;
            const bool hit = std::any_of(maxima.begin(), maxima.end(),
                                         [&](double t) { return std::abs(t - target) <= 0.15; });
            if (hit)
                ++matched;
            else
                missing += fmt(" %d (C = %.3f there)", m, conc(target));
        }
        r.passed = matched == 4;
        r.detail = fmt("maxima %s; multiples of pi/2 matched %d/4%s",
                       join_pi(maxima, kPi / 2.0, "pi/2").c_str(), matched,
                       missing.empty() ? "" : ("; no maximum within 0.15 of m =" + missing).c_str());
    });
}

CheckResult check_qfunction() {
    return timed("11", "Husimi Q sanity", [&](CheckResult& r) {
        const double mean_n = 10.0;
        const dynamics::Axis axis;  // [-6, 6], 241 nodes
        const double reach = std::max(std::abs(axis.min), std::abs(axis.max));
        const int n_max = std::max(dynamics::auto_n_max(mean_n),
                                   static_cast<int>(std::ceil(2.0 * 2.0 * reach * reach)));
        const auto ev = make_evolution(buck_sukumar(0.0, 0.0), mean_n,
                                       dynamics::AtomInit::BothExcited, n_max);

        const auto q0 = dynamics::husimi_grid(ev.field_density(0.0), axis, axis);
        const auto it = std::max_element(q0.values.begin(), q0.values.end());
        const auto idx = static_cast<std::size_t>(it - q0.values.begin());
        const double pre = q0.re.at(static_cast<int>(idx / q0.im.count));
        const double pim = q0.im.at(static_cast<int>(idx % q0.im.count));
        const double dist = std::hypot(pre - std::sqrt(mean_n), pim);
        const double integral = q0.integral();
        const bool ok_max = std::abs(*it - 1.0 / kPi) <= 1e-3;
        const bool ok_pos = dist <= axis.step();
        const bool ok_norm = std::abs(integral - 1.0) <= 1e-3;

        const auto q1 = dynamics::husimi_grid(ev.field_density(kPi / 4.0), axis, axis);
        const double ring = std::sqrt(mean_n);
        std::vector<dynamics::Lobe> on_ring;
        for (const auto& l : dynamics::find_lobes(q1)) {
            if (std::abs(l.radius() - ring) > 0.15 * ring) continue;
            const bool separated = std::all_of(on_ring.begin(), on_ring.end(), [&](const auto& o) {
                return std::hypot(o.re - l.re, o.im - l.im) >= 1.0;
            });
            if (separated) on_ring.push_back(l);
        }
        std::string lobes;
        for (const auto& l : on_ring) lobes += fmt(" (%.2f, %.2f)", l.re, l.im);
        const bool ok_lobes = on_ring.size() >= 2;
        r.passed = ok_max && ok_pos && ok_norm && ok_lobes;
        r.detail = fmt("n_max %d; t=0: max %.6f at (%.2f, %.2f) (1/pi = %.6f) %s, integral %.6f %s; "
                       "gt=pi/4: %zu separated lobes on radius sqrt10 +- 15%%:%s %s",
                       n_max, *it, pre, pim, 1.0 / kPi, ok_max && ok_pos ? "ok" : "FAIL", integral,
                       ok_norm ? "ok" : "FAIL", on_ring.size(), lobes.c_str(),
                       ok_lobes ? "ok" : "FAIL");
    });
}

CheckResult check_fixture_integrity(const std::filesystem::path& fixture_dir) {
    return timed("fixture", "fixture integrity", [&](CheckResult& r) {
        const auto f = load_fixture(fixture_dir / kFixtureName);
        r.passed = true;
        r.detail = fmt("checksum ok; max deviation %.6g, tolerance %.4g", f.max_abs_deviation,
                       f.tolerance);
    });
}

CheckResult check_kernel_equivalence(std::uint64_t seed) {
    return timed("kernels", "scalar vs AVX2 kernel equivalence", [&](CheckResult& r) {
        if (!kernels::avx2_supported()) {
            r.passed = true;
            r.detail = "AVX2 unavailable on this CPU; scalar kernels only";
            return;
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        double worst_cos = 0.0, worst_sc = 0.0, worst_form = 0.0;
        for (int len : {1, 3, 4, 7, 16, 33, 250, 1001}) {
            std::vector<double> w(len), f(len), c1(len), s1(len), c2(len), s2(len);
            for (int i = 0; i < len; ++i) {
                w[i] = unit(rng);
                f[i] = 200.0 * unit(rng);
            }
            for (double t : {0.0, 0.37, 12.5, 1319.0}) {
                double scale = 0.0;
                for (double v : w) scale += std::abs(v);
                worst_cos = std::max(worst_cos, std::abs(kernels::scalar::cos_sum(w, f, t) -
                                                         kernels::avx2::cos_sum(w, f, t)) / scale);
                kernels::scalar::sincos(f, t, c1, s1);
                kernels::avx2::sincos(f, t, c2, s2);
                for (int i = 0; i < len; ++i)
                    worst_sc = std::max({worst_sc, std::abs(c1[i] - c2[i]), std::abs(s1[i] - s2[i])});
            }
            const std::size_t dim = static_cast<std::size_t>(std::min(len, 64));
            std::vector<double> mr(dim * dim), mi(dim * dim), vr(dim), vi(dim);
            for (auto& v : mr) v = unit(rng);
            for (auto& v : mi) v = unit(rng);
            for (auto& v : vr) v = unit(rng);
            for (auto& v : vi) v = unit(rng);
            const double a = kernels::scalar::hermitian_form(mr, mi, vr, vi);
            const double b = kernels::avx2::hermitian_form(mr, mi, vr, vi);
            worst_form = std::max(worst_form, std::abs(a - b) / static_cast<double>(dim * dim));
        }
        r.passed = worst_cos < 1e-13 && worst_sc < 1e-14 && worst_form < 1e-14;
        r.detail = fmt("max diff cos_sum %.2e (rel, limit 1e-13), sincos %.2e (limit 1e-14), "
                       "hermitian_form %.2e (per element, limit 1e-14)",
                       worst_cos, worst_sc, worst_form);
    });
}

CheckResult check_small_oracle() {
    return timed("oracle-small", "analytic vs sector oracle, small truncation", [&](CheckResult& r) {
        double worst = 0.0;
        for (auto init : {dynamics::AtomInit::BothExcited, dynamics::AtomInit::Symmetric}) {
            const auto params = buck_sukumar(0.3, 0.1, 0.05, model::FieldKind::Kerr);
            const double mean_n = 4.0;
            const int n_max = dynamics::auto_n_max(mean_n);
            const auto field = dynamics::coherent_field(mean_n, 0.4, n_max, init);
            const dynamics::AnalyticEvolution ev(spectral::compute_spectra(params, n_max), field);
            const oracle::SectorPropagator prop(oracle::build_joint_hamiltonian(params, n_max), n_max);
            const auto psi0 = oracle::initial_state(field);
            for (double t : analysis::linspace(0.0, 10.0, 60)) {
                const auto psi = prop.evolve(psi0, t);
                const Eigen::Matrix4cd ra = oracle::partial_trace_field(psi);
                const Eigen::Matrix4cd rb = dynamics::embed_two_qubit(ev.atom_density(t));
                worst = std::max(worst, (ra - rb).cwiseAbs().maxCoeff());
            }
        }
        r.passed = worst < 1e-9;
        r.detail = fmt("max |rho_A(analytic) - rho_A(oracle)| %.2e (limit 1e-9)", worst);
    });
}

std::vector<CheckResult> acceptance_suite(const Options& options) {
    return {check_spectral_correctness(10000, options.seed),
            check_frequency_identities(10000, options.seed),
            check_t0_anchors(),
            check_shift_invariance(),
            check_oracle_equivalence(),
            check_revival_features(),
            check_approx_agreement(options.fixture_dir),
            check_kerr_beat(),
            check_entropy_structure(),
            check_concurrence_maxima(),
            check_qfunction()};
}

std::vector<CheckResult> validate(const Options& options) {
    std::vector<CheckResult> out;
    if (options.level == Level::Full) {
        out = acceptance_suite(options);
    } else {
        out = {check_spectral_correctness(1000, options.seed),
               check_frequency_identities(1000, options.seed), check_t0_anchors(),
               check_shift_invariance()};
    }
    out.push_back(check_fixture_integrity(options.fixture_dir));
    out.push_back(check_kernel_equivalence(options.seed));
    out.push_back(check_small_oracle());
    return out;
}

std::string report_json(const std::vector<CheckResult>& results, Level level) {
    nlohmann::ordered_json j;
    j["level"] = level == Level::Fast ? "fast" : "full";
    j["passed"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : results)
        j["checks"].push_back({{"id", r.id},
                               {"name", r.name},
                               {"passed", r.passed},
                               {"detail", r.detail},
                               {"seconds", r.seconds}});
    return j.dump(2);
}

}  // namespace jcm::validation
