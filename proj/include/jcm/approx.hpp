#pragma once

#include <string>
#include <vector>

#include "jcm/model.hpp"

namespace jcm::approx {

enum class Regime { KerrLocked, StandardCavity };

std::string to_string(Regime regime);

/// x is chi/g (KerrLocked, chi = 2(kappa - J)) or (kappa - J)/g (StandardCavity).
struct ApproxRegime {
    Regime regime = Regime::StandardCavity;
    double x = 0.0;
    double mean_n = 1.0;
    double phi_n = 0.0;  // sqrt2 (<n>+1)^2 / sqrt((<n>+2)^2 + (<n>+1)^2), KerrLocked only
};

/// Throw DomainError unless mean_n >= 1 and x is admissible (x >= 0; x < 1 for StandardCavity).
ApproxRegime kerr_locked(double x, double mean_n);
ApproxRegime standard_cavity(double x, double mean_n);

/// Build from model parameters, checking BuckSukumar coupling and the regime's
/// locking condition (chi = 2(kappa - J) to 1e-12 relative, or chi = 0).
ApproxRegime kerr_locked(const model::ModelParams& params, double mean_n);
ApproxRegime standard_cavity(const model::ModelParams& params, double mean_n);

/// Soft warnings: <n> below 10, Kerr x above 0.1.
std::vector<std::string> warnings(const ApproxRegime& regime);

struct KerrLambdas {
    double l11 = 0.0, l22 = 0.0, l33 = 0.0;
    double l21 = 0.0, l31 = 0.0, l23 = 0.0;
};

KerrLambdas kerr_lambdas(double x);

/// e^{-2 <n> sin^2 tau}
double envelope(double mean_n, double tau);

struct ApproxValue {
    double value = 0.0;
    bool outside_validity = false;  // tau beyond 0.1 * 4 <n>^2
};

ApproxValue kerr_approx_inversion(const ApproxRegime& regime, double tau);

/// e^{-2<n> sin^2 tau} cos(x tau) cos(3 tau + <n> sin 2tau)
ApproxValue standard_approx_inversion(const ApproxRegime& regime, double tau);

/// Dispatch on regime.regime.
ApproxValue approx_inversion(const ApproxRegime& regime, double tau);

struct Timescales {
    double tau_collapse = 0.0;  // 1/sqrt(2<n>)
    double tau_revival = 0.0;   // pi
    double beat_period = 0.0;   // pi/x or pi/(3x); +inf when x = 0
};

Timescales timescales(const ApproxRegime& regime);

/// Upper end of the trusted window, 0.1 * 4 <n>^2.
double validity_limit(double mean_n);

}  // namespace jcm::approx
