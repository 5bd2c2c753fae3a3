#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcm/approx.hpp"
#include "jcm/errors.hpp"

using namespace jcm;
constexpr double kPi = std::numbers::pi;

namespace {

model::ModelParams params(double kappa, double J, double chi, model::FieldKind h,
                          model::CouplingKind f = model::CouplingKind::BuckSukumar) {
    model::ModelSpec s;
    s.g = 0.5;
    s.kappa = kappa;
    s.J_ising = J;
    s.chi = chi;
    s.h.kind = h;
    s.f.kind = f;
    return model::ModelParams(s);
}

}  // namespace

TEST_CASE("regime construction from model parameters") {
    const auto sc = approx::standard_cavity(params(0.1, 0.05, 0.0, model::FieldKind::Standard), 20.0);
    CHECK(sc.regime == approx::Regime::StandardCavity);
    CHECK(sc.x == doctest::Approx(0.1));

    const auto kl = approx::kerr_locked(params(0.03, 0.01, 0.04, model::FieldKind::Kerr), 20.0);
    CHECK(kl.x == doctest::Approx(0.08));
    CHECK(kl.phi_n == doctest::Approx(std::sqrt(2.0) * 441.0 / std::sqrt(484.0 + 441.0)));

    CHECK_THROWS_AS(approx::kerr_locked(params(0.03, 0.0, 0.04, model::FieldKind::Kerr), 20.0), DomainError);
    CHECK_THROWS_AS(approx::standard_cavity(params(0.1, 0.0, 0.1, model::FieldKind::Kerr), 20.0), DomainError);
    CHECK_THROWS_AS(approx::standard_cavity(params(0.1, 0.0, 0.0, model::FieldKind::Standard,
                                                   model::CouplingKind::Linear), 20.0),
                    DomainError);
    CHECK_THROWS_AS(approx::standard_cavity(0.1, 0.5), DomainError);
    CHECK_THROWS_AS(approx::standard_cavity(1.0, 20.0), DomainError);
    CHECK_THROWS_AS(approx::kerr_locked(-0.1, 20.0), DomainError);
}

TEST_CASE("standard-cavity formula") {
    const auto r = approx::standard_cavity(0.125, 20.0);
    CHECK(approx::standard_approx_inversion(r, 0.0).value == doctest::Approx(1.0));
    // envelope revives at multiples of pi, the cos(x tau) beat vanishes at tau = 4 pi
    CHECK(approx::envelope(20.0, kPi) == doctest::Approx(1.0));
    CHECK(std::abs(approx::standard_approx_inversion(r, 4 * kPi).value) < 1e-12);
    CHECK(approx::envelope(20.0, kPi / 2) == doctest::Approx(std::exp(-40.0)));
    const double tau = 1.3;
    CHECK(approx::approx_inversion(r, tau).value ==
          doctest::Approx(approx::envelope(20.0, tau) * std::cos(0.125 * tau) *
                          std::cos(3 * tau + 20 * std::sin(2 * tau))));
    CHECK_THROWS_AS(approx::kerr_approx_inversion(r, 1.0), DomainError);
}

TEST_CASE("Kerr weights") {
    const auto l0 = approx::kerr_lambdas(0.0);
    CHECK(l0.l31 == doctest::Approx(0.25));
    CHECK(l0.l23 == doctest::Approx(0.25));
    CHECK(l0.l11 == doctest::Approx(0.0));
    CHECK(l0.l22 == doctest::Approx(0.0));
    for (double x : {0.01, 0.05, 0.3}) {
        const auto l = approx::kerr_lambdas(x);
        CHECK(l.l31 > 0.0);
        CHECK(l.l23 > 0.0);
        CHECK(std::isfinite(l.l11 + l.l22));
    }
    const auto r = approx::kerr_locked(0.05, 20.0);
    const auto l = approx::kerr_lambdas(0.05);
    CHECK(approx::kerr_approx_inversion(r, 0.0).value == doctest::Approx(l.l11 + l.l22 + l.l31 + l.l23));
}

TEST_CASE("validity window and warnings") {
    const auto r = approx::standard_cavity(0.1, 20.0);
    CHECK(approx::validity_limit(20.0) == doctest::Approx(160.0));
    CHECK_FALSE(approx::standard_approx_inversion(r, 159.0).outside_validity);
    CHECK(approx::standard_approx_inversion(r, 161.0).outside_validity);
    CHECK(approx::warnings(r).empty());
    CHECK(approx::warnings(approx::standard_cavity(0.1, 5.0)).size() == 1);
    CHECK(approx::warnings(approx::kerr_locked(0.2, 20.0)).size() == 1);
}

TEST_CASE("timescales") {
    const auto t = approx::timescales(approx::standard_cavity(0.125, 20.0));
    CHECK(t.tau_collapse == doctest::Approx(1.0 / std::sqrt(40.0)));
    CHECK(t.tau_revival == doctest::Approx(kPi));
    CHECK(t.beat_period == doctest::Approx(8 * kPi));
    CHECK(approx::timescales(approx::kerr_locked(1.0 / 32, 20.0)).beat_period ==
          doctest::Approx(32 * kPi / 3));
    CHECK(std::isinf(approx::timescales(approx::standard_cavity(0.0, 20.0)).beat_period));
    CHECK(approx::to_string(approx::Regime::KerrLocked) == "kerr_locked");
}
