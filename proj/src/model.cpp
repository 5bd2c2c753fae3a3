#include "jcm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jcm/errors.hpp"

namespace jcm::model {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

double table_lookup(const std::vector<double>& table, int n, const char* what) {
    if (n < 0 || static_cast<std::size_t>(n) >= table.size()) {
        throw DomainError(std::string(what) + " custom table has no entry for n = " +
                          std::to_string(n) + " (size " + std::to_string(table.size()) + ")");
    }
    return table[static_cast<std::size_t>(n)];
}

}  // namespace

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::Standard: return "standard";
        case FieldKind::Kerr: return "kerr";
        case FieldKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(CouplingKind kind) {
    switch (kind) {
        case CouplingKind::Linear: return "linear";
        case CouplingKind::BuckSukumar: return "buck_sukumar";
        case CouplingKind::Custom: return "custom";
    }
    return "?";
}

FieldKind parse_field_kind(const std::string& text) {
    if (text == "standard") return FieldKind::Standard;
    if (text == "kerr") return FieldKind::Kerr;
    if (text == "custom") return FieldKind::Custom;
    throw DomainError("unknown field nonlinearity '" + text + "' (standard|kerr|custom)");
}

CouplingKind parse_coupling_kind(const std::string& text) {
    if (text == "linear") return CouplingKind::Linear;
    if (text == "buck_sukumar") return CouplingKind::BuckSukumar;
    if (text == "custom") return CouplingKind::Custom;
    throw DomainError("unknown coupling nonlinearity '" + text + "' (linear|buck_sukumar|custom)");
}

ModelParams::ModelParams(ModelSpec spec) : spec_(std::move(spec)) {
    require_finite(spec_.omega0, "omega0");
    require_finite(spec_.omega, "omega");
    require_finite(spec_.g, "g");
    require_finite(spec_.kappa, "kappa");
    require_finite(spec_.J_ising, "J");
    require_finite(spec_.chi, "chi");
    if (!(spec_.g > 0.0)) throw DomainError("g must be > 0");
    if (!(spec_.omega0 > 0.0)) throw DomainError("omega0 must be > 0");
    if (spec_.chi < 0.0) throw DomainError("chi must be >= 0");

    const double derived = spec_.omega - spec_.omega0;
    if (spec_.delta) {
        require_finite(*spec_.delta, "delta");
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(spec_.omega), std::abs(spec_.omega0));
        if (std::abs(*spec_.delta - derived) > slack) {
            throw DomainError("delta must equal omega - omega0 (got delta = " +
                              std::to_string(*spec_.delta) + ", omega - omega0 = " +
                              std::to_string(derived) + ")");
        }
    } else {
        spec_.delta = derived;
    }

    if (spec_.h.kind == FieldKind::Custom && spec_.h.table.empty())
        throw DomainError("custom h selector needs a table");
    if (spec_.f.kind == CouplingKind::Custom && spec_.f.table.empty())
        throw DomainError("custom f selector needs a table");
    for (double v : spec_.h.table) require_finite(v, "h table entry");
    for (double v : spec_.f.table) require_finite(v, "f table entry");
}

void ModelParams::check_tables(int n_max) const {
    const auto need = static_cast<std::size_t>(n_max) + 3;
    if (spec_.h.kind == FieldKind::Custom && spec_.h.table.size() < need)
        throw DomainError("custom h table must cover n = 0.." + std::to_string(n_max + 2));
    if (spec_.f.kind == CouplingKind::Custom && spec_.f.table.size() < need)
        throw DomainError("custom f table must cover n = 0.." + std::to_string(n_max + 2));
}

double eval_h(const ModelParams& params, int n) {
    if (n < 0) throw DomainError("h(n) requires n >= 0");
    switch (params.h().kind) {
        case FieldKind::Standard: return 1.0;
        case FieldKind::Kerr: return 1.0 + params.chi() / params.omega0() * n;
        case FieldKind::Custom: return table_lookup(params.h().table, n, "h");
    }
    return 1.0;
}

double eval_f(const ModelParams& params, int n) {
    if (n < 0) throw DomainError("f(n) requires n >= 0");
    switch (params.f().kind) {
        case CouplingKind::Linear: return 1.0;
        case CouplingKind::BuckSukumar: return std::sqrt(static_cast<double>(n));
        case CouplingKind::Custom: return table_lookup(params.f().table, n, "f");
    }
    return 1.0;
}

double ladder_factor(const CouplingSelector& selector, int m) {
    if (m <= 0) throw DomainError("ladder factor requires m >= 1, got " + std::to_string(m));
    switch (selector.kind) {
        case CouplingKind::Linear: return std::sqrt(static_cast<double>(m));
        case CouplingKind::BuckSukumar: return static_cast<double>(m);
        case CouplingKind::Custom:
            return table_lookup(selector.table, m, "f") * std::sqrt(static_cast<double>(m));
    }
    return 0.0;
}

PhotonBlock build_block(const ModelParams& params, int n) {
    if (n < 0) throw DomainError("photon block index must be >= 0");
    PhotonBlock b;
    b.n = n;
    for (int i = 0; i < 3; ++i) b.F[i] = (n + i) * (eval_h(params, n + i) - 1.0);
    b.f_np1 = ladder_factor(params.f(), n + 1);
    b.f_np2 = ladder_factor(params.f(), n + 2);

    const double w0 = params.omega0();
    const double d = params.delta();
    const double J = params.J();
    const double k = params.kappa();
    const double c12 = std::sqrt(2.0) * params.g() * b.f_np1;
    const double c23 = std::sqrt(2.0) * params.g() * b.f_np2;

    // clang-format off
    b.matrix << w0 * b.F[0] + d + J, c12,                     0.0,
                c12,                 w0 * b.F[1] - J + 2 * k, c23,
                0.0,                 c23,                     w0 * b.F[2] - d + J;
    // clang-format on
    return b;
}

ValidityRatios validity_ratios(const ModelParams& params, double mean_n) {
    const int n = std::max(0, static_cast<int>(std::lround(mean_n)));
    const double gf = params.g() * eval_f(params, n);
    return {gf / (params.omega0() * eval_h(params, n)), gf / std::abs(params.omega())};
}

}  // namespace jcm::model
