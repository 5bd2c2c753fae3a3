#include <doctest.h>

#include <cmath>

#include "jcm/errors.hpp"
#include "jcm/model.hpp"

using namespace jcm;
using model::CouplingKind;
using model::FieldKind;

namespace {

model::ModelParams make(double kappa, double J, double chi, FieldKind h, CouplingKind f,
                        double delta = 0.0) {
    model::ModelSpec s;
    s.omega0 = 2.0;
    s.omega = 2.0 + delta;
    s.g = 0.5;
    s.kappa = kappa;
    s.J_ising = J;
    s.chi = chi;
    s.h.kind = h;
    s.f.kind = f;
    return model::ModelParams(s);
}

}  // namespace

TEST_CASE("nonlinearity functions") {
    const auto p = make(0.0, 0.0, 0.3, FieldKind::Kerr, CouplingKind::BuckSukumar);
    CHECK(model::eval_h(p, 4) == doctest::Approx(1.0 + 0.3 * 4 / 2.0));
    CHECK(model::eval_f(p, 9) == doctest::Approx(3.0));
    CHECK(model::ladder_factor(p.f(), 7) == 7.0);

    const auto q = make(0.0, 0.0, 0.3, FieldKind::Standard, CouplingKind::Linear);
    CHECK(model::eval_h(q, 11) == 1.0);
    CHECK(model::eval_f(q, 11) == 1.0);
    CHECK(model::ladder_factor(q.f(), 5) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("custom tables are looked up and bounds-checked") {
    model::ModelSpec s;
    s.h.kind = FieldKind::Custom;
    s.h.table = {1.0, 1.1, 1.2, 1.3};
    s.f.kind = CouplingKind::Custom;
    s.f.table = {0.0, 1.0, 0.9, 0.8};
    const model::ModelParams p(s);
    CHECK(model::eval_h(p, 2) == 1.2);
    CHECK(model::ladder_factor(p.f(), 2) == doctest::Approx(0.9 * std::sqrt(2.0)));
    CHECK_NOTHROW(p.check_tables(1));
    CHECK_THROWS_AS(p.check_tables(2), DomainError);
    CHECK_THROWS_AS(model::eval_h(p, 4), DomainError);
}

TEST_CASE("parameter validation") {
    model::ModelSpec s;
    s.g = 0.0;
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.g = 1.0;
    s.chi = -0.1;
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.chi = 0.0;
    s.omega0 = 0.0;
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.omega0 = 1.0;
    s.kappa = std::nan("");
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.kappa = 0.0;
    s.h.kind = FieldKind::Custom;
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.h.kind = FieldKind::Standard;
    s.omega = 1.5;
    s.delta = 0.4;
    CHECK_THROWS_AS(model::ModelParams{s}, DomainError);
    s.delta = 0.5;
    CHECK(model::ModelParams(s).delta() == 0.5);
    s.delta.reset();
    CHECK(model::ModelParams(s).delta() == doctest::Approx(0.5));
}

TEST_CASE("selector names round-trip") {
    for (auto k : {FieldKind::Standard, FieldKind::Kerr, FieldKind::Custom})
        CHECK(model::parse_field_kind(model::to_string(k)) == k);
    for (auto k : {CouplingKind::Linear, CouplingKind::BuckSukumar, CouplingKind::Custom})
        CHECK(model::parse_coupling_kind(model::to_string(k)) == k);
    CHECK_THROWS_AS(model::parse_field_kind("quadratic"), DomainError);
}

TEST_CASE("block entries") {
    const double kappa = 0.3, J = 0.1, chi = 0.05, delta = 0.2;
    const auto p = make(kappa, J, chi, FieldKind::Kerr, CouplingKind::BuckSukumar, delta);
    const int n = 6;
    const auto b = model::build_block(p, n);
    // omega0 F_{n,i} = chi (n+i)^2 for the Kerr field
    CHECK(b.matrix(0, 0) == doctest::Approx(chi * 36 + delta + J));
    CHECK(b.matrix(1, 1) == doctest::Approx(chi * 49 - J + 2 * kappa));
    CHECK(b.matrix(2, 2) == doctest::Approx(chi * 64 - delta + J));
    CHECK(b.matrix(0, 1) == doctest::Approx(std::sqrt(2.0) * 0.5 * 7));
    CHECK(b.matrix(1, 2) == doctest::Approx(std::sqrt(2.0) * 0.5 * 8));
    CHECK(b.matrix(0, 2) == 0.0);
    CHECK((b.matrix - b.matrix.transpose()).norm() == 0.0);
}

TEST_CASE("validity ratios are reported") {
    const auto p = make(0.0, 0.0, 0.0, FieldKind::Standard, CouplingKind::Linear);
    const auto r = model::validity_ratios(p, 10.0);
    CHECK(r.coupling_over_field == doctest::Approx(0.25));
    CHECK(r.coupling_over_atom == doctest::Approx(0.25));
}
