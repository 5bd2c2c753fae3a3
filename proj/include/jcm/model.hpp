#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jcm::model {

/// Field nonlinearity h(n) entering H_F = omega0 * n * h(n).
enum class FieldKind { Standard, Kerr, Custom };

/// Coupling nonlinearity f(n) entering the atom-field term.
enum class CouplingKind { Linear, BuckSukumar, Custom };

struct FieldSelector {
    FieldKind kind = FieldKind::Standard;
    std::vector<double> table;  // h(0), h(1), ... for Custom
};

struct CouplingSelector {
    CouplingKind kind = CouplingKind::Linear;
    std::vector<double> table;  // f(0), f(1), ... for Custom
};

std::string to_string(FieldKind kind);
std::string to_string(CouplingKind kind);
FieldKind parse_field_kind(const std::string& text);
CouplingKind parse_coupling_kind(const std::string& text);

/// Plain aggregate used to construct ModelParams. All frequencies in rad/time, hbar = 1.
struct ModelSpec {
    double omega0 = 1.0;
    double omega = 1.0;
    double g = 1.0;
    double kappa = 0.0;
    double J_ising = 0.0;
    double chi = 0.0;
    std::optional<double> delta;  // derived from omega - omega0 when absent
    FieldSelector h;
    CouplingSelector f;
};

/// Validated, immutable physical parameters.
class ModelParams {
public:
    /// Throws DomainError when g <= 0, omega0 <= 0, chi < 0, a value is not
    /// finite, a Custom selector has an empty table, or delta differs from omega - omega0
    /// by more than rounding.
    explicit ModelParams(ModelSpec spec);

    double omega0() const noexcept { return spec_.omega0; }
    double omega() const noexcept { return spec_.omega; }
    double g() const noexcept { return spec_.g; }
    double kappa() const noexcept { return spec_.kappa; }
    double J() const noexcept { return spec_.J_ising; }
    double chi() const noexcept { return spec_.chi; }
    double delta() const noexcept { return *spec_.delta; }
    const FieldSelector& h() const noexcept { return spec_.h; }
    const CouplingSelector& f() const noexcept { return spec_.f; }

    /// Copy of the resolved spec, for deriving modified parameter sets.
    const ModelSpec& spec() const noexcept { return spec_; }

    /// Throws DomainError if a Custom table does not cover [0, n_max + 2].
    void check_tables(int n_max) const;

private:
    ModelSpec spec_;
};

double eval_h(const ModelParams& params, int n);
double eval_f(const ModelParams& params, int n);

/// f_m = f(m) * sqrt(m), m >= 1. BuckSukumar returns m exactly.
double ladder_factor(const CouplingSelector& selector, int m);

/// Per-photon-number 3x3 interaction-picture block in the basis
/// |e,e,n>, (|e,g,n+1> + |g,e,n+1>)/sqrt2, |g,g,n+2>.
struct PhotonBlock {
    int n = 0;
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();
    double f_np1 = 0.0;
    double f_np2 = 0.0;
    std::array<double, 3> F{};  // F_{n,i} = (n+i)(h(n+i) - 1)
};

PhotonBlock build_block(const ModelParams& params, int n);

/// Ratios that the rotating-wave treatment assumes to be small. Reported only.
struct ValidityRatios {
    double coupling_over_field = 0.0;  // g <f(n)> / (omega0 <h(n)>)
    double coupling_over_atom = 0.0;   // g <f(n)> / omega
};

ValidityRatios validity_ratios(const ModelParams& params, double mean_n);

}  // namespace jcm::model
