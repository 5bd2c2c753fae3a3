#include "jcm/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jcm/errors.hpp"

namespace jcm::approx {

namespace {

void check_mean(double mean_n) {
    if (!std::isfinite(mean_n) || mean_n < 1.0)
        throw DomainError("approximations need mean_n >= 1");
}

void check_buck_sukumar(const model::ModelParams& params) {
    if (params.f().kind != model::CouplingKind::BuckSukumar)
        throw DomainError("approximate inversion formulas assume buck_sukumar coupling");
}

double effective_chi(const model::ModelParams& params) {
    switch (params.h().kind) {
        case model::FieldKind::Standard: return 0.0;
        case model::FieldKind::Kerr: return params.chi();
        case model::FieldKind::Custom: break;
    }
    throw DomainError("approximate inversion formulas need a standard or kerr field");
}

}  // namespace

std::string to_string(Regime regime) {
    return regime == Regime::KerrLocked ? "kerr_locked" : "standard_cavity";
}

ApproxRegime kerr_locked(double x, double mean_n) {
    check_mean(mean_n);
    if (!std::isfinite(x) || x < 0.0) throw DomainError("kerr x = chi/g must be >= 0");
    const double a = mean_n + 1.0;
    const double b = mean_n + 2.0;
    return {Regime::KerrLocked, x, mean_n, std::sqrt(2.0) * a * a / std::sqrt(b * b + a * a)};
}

ApproxRegime standard_cavity(double x, double mean_n) {
    check_mean(mean_n);
    if (!std::isfinite(x) || x < 0.0 || x >= 1.0)
        throw DomainError("standard-cavity x = (kappa - J)/g must lie in [0, 1)");
    return {Regime::StandardCavity, x, mean_n, 0.0};
}

ApproxRegime kerr_locked(const model::ModelParams& params, double mean_n) {
    check_buck_sukumar(params);
    const double chi = effective_chi(params);
    const double locked = 2.0 * (params.kappa() - params.J());
    if (std::abs(chi - locked) > 1e-12 * std::max(std::abs(chi), std::abs(locked)))
        throw DomainError("kerr_locked regime requires chi = 2 (kappa - J)");
    return kerr_locked(chi / params.g(), mean_n);
}

ApproxRegime standard_cavity(const model::ModelParams& params, double mean_n) {
    check_buck_sukumar(params);
    if (effective_chi(params) != 0.0) throw DomainError("standard_cavity regime requires chi = 0");
    return standard_cavity((params.kappa() - params.J()) / params.g(), mean_n);
}

std::vector<std::string> warnings(const ApproxRegime& regime) {
    std::vector<std::string> out;
    if (regime.mean_n < 10.0) out.push_back("mean_n < 10: large-<n> expansion is rough");
    if (regime.regime == Regime::KerrLocked && regime.x > 0.1)
        out.push_back("x = chi/g > 0.1: small-anharmonicity expansion is rough");
    return out;
}

KerrLambdas kerr_lambdas(double x) {
    const double r = x * std::sqrt(1.0 + x * x);
    const double p = x * x + r + 1.0;
    const double m = x * x - r + 1.0;
    const double q = 4.0 * (1.0 + x * x);
    KerrLambdas l;
    l.l31 = 1.0 / (q * p);
    l.l23 = 1.0 / (q * m);
    l.l11 = -(x * x + r) / (4.0 * p * p * p);
    l.l22 = -(x * x - r) / (4.0 * m * m * m);
    return l;
}

double envelope(double mean_n, double tau) {
    const double s = std::sin(tau);
    return std::exp(-2.0 * mean_n * s * s);
}

double validity_limit(double mean_n) { return 0.4 * mean_n * mean_n; }

ApproxValue kerr_approx_inversion(const ApproxRegime& regime, double tau) {
    if (regime.regime != Regime::KerrLocked) throw DomainError("regime is not kerr_locked");
    const auto l = kerr_lambdas(regime.x);
    const double x = regime.x;
    const double common = regime.phi_n * x * x * tau + regime.mean_n * std::sin(2.0 * tau);
    const double osc = l.l31 * std::cos(3.0 * (1.0 + x) * tau + common) +
                       l.l23 * std::cos(3.0 * (1.0 - x) * tau + common);
    return {l.l11 + l.l22 + envelope(regime.mean_n, tau) * osc,
            std::abs(tau) > validity_limit(regime.mean_n)};
}

ApproxValue standard_approx_inversion(const ApproxRegime& regime, double tau) {
    if (regime.regime != Regime::StandardCavity) throw DomainError("regime is not standard_cavity");
    const double v = envelope(regime.mean_n, tau) * std::cos(regime.x * tau) *
                     std::cos(3.0 * tau + regime.mean_n * std::sin(2.0 * tau));
    return {v, std::abs(tau) > validity_limit(regime.mean_n)};
}

ApproxValue approx_inversion(const ApproxRegime& regime, double tau) {
    return regime.regime == Regime::KerrLocked ? kerr_approx_inversion(regime, tau)
                                               : standard_approx_inversion(regime, tau);
}

Timescales timescales(const ApproxRegime& regime) {
    Timescales t;
    t.tau_collapse = 1.0 / std::sqrt(2.0 * regime.mean_n);
    t.tau_revival = std::numbers::pi;
    const double denom = regime.regime == Regime::KerrLocked ? 3.0 * regime.x : regime.x;
    t.beat_period = denom == 0.0 ? std::numeric_limits<double>::infinity()
                                 : std::numbers::pi / denom;
    return t;
}

}  // namespace jcm::approx
