#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "jcm/dynamics.hpp"
#include "jcm/errors.hpp"
#include "jcm/oracle.hpp"

using namespace jcm;
using dynamics::AtomInit;
using cplx = std::complex<double>;

namespace {

model::ModelParams params(double kappa, double J, double chi, model::FieldKind h,
                          model::CouplingKind f, double delta = 0.0) {
    model::ModelSpec s;
    s.kappa = kappa;
    s.J_ising = J;
    s.chi = chi;
    s.omega = 1.0 + delta;
    s.h.kind = h;
    s.f.kind = f;
    return model::ModelParams(s);
}

dynamics::AnalyticEvolution evolution(const model::ModelParams& p, double mean_n, AtomInit init,
                                      double phase = 0.0) {
    const int n_max = dynamics::auto_n_max(mean_n);
    return {spectral::compute_spectra(p, n_max), dynamics::coherent_field(mean_n, phase, n_max, init)};
}

}  // namespace

TEST_CASE("coherent field") {
    const auto f = dynamics::coherent_field(9.0, 0.7, dynamics::auto_n_max(9.0));
    double norm = 0.0, mean = 0.0;
    const auto p = f.probabilities();
    for (std::size_t n = 0; n < p.size(); ++n) {
        norm += p[n];
        mean += n * p[n];
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mean == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(std::arg(f.amplitudes[1]) == doctest::Approx(0.7));
    CHECK(dynamics::auto_n_max(20.0) == 94);
}

TEST_CASE("too small truncation is rejected with a suggestion") {
    try {
        dynamics::coherent_field(20.0, 0.0, 25);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.suggested_n_max() == dynamics::minimal_n_max(20.0));
        CHECK(e.suggested_n_max() > 25);
        CHECK_NOTHROW(dynamics::coherent_field(20.0, 0.0, e.suggested_n_max()));
    }
}

TEST_CASE("atomic state names") {
    CHECK(dynamics::parse_atom_init("symmetric") == AtomInit::Symmetric);
    CHECK(dynamics::to_string(AtomInit::BothExcited) == "both_excited");
    CHECK_THROWS_AS(dynamics::parse_atom_init("ground"), DomainError);
}

TEST_CASE("analytic evolution agrees with exact propagation of the full Hamiltonian") {
    const auto p = params(0.2, 0.05, 0.03, model::FieldKind::Kerr, model::CouplingKind::BuckSukumar, 0.1);
    for (auto init : {AtomInit::BothExcited, AtomInit::Symmetric}) {
        const double mean_n = 6.0;
        const int n_max = dynamics::auto_n_max(mean_n);
        const auto field = dynamics::coherent_field(mean_n, 0.3, n_max, init);
        const dynamics::AnalyticEvolution ev(spectral::compute_spectra(p, n_max), field);
        const oracle::SectorPropagator prop(oracle::build_joint_hamiltonian(p, n_max), n_max);
        const auto psi0 = oracle::initial_state(field);
        for (double t : {0.0, 0.4, 1.7, 6.0, 23.0}) {
            const auto psi = prop.evolve(psi0, t);
            const auto rho = ev.atom_density(t);
            const Eigen::Matrix4cd ra = oracle::partial_trace_field(psi);
            CHECK((dynamics::embed_two_qubit(rho) - ra).cwiseAbs().maxCoeff() < 1e-11);
            CHECK(dynamics::inversion_from_density(rho) == doctest::Approx(oracle::inversion(psi)).epsilon(1e-11));
            if (init == AtomInit::BothExcited)
                CHECK(std::abs(ev.inversion(t) - oracle::inversion(psi)) < 1e-11);
            const auto rf = ev.field_density(t);
            const auto rf_ref = oracle::partial_trace_atoms(psi);
            CHECK((rf.rho - rf_ref.rho).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("inversion is only closed-form for both atoms excited") {
    const auto p = params(0.0, 0.0, 0.0, model::FieldKind::Standard, model::CouplingKind::Linear);
    CHECK_THROWS_AS(evolution(p, 5.0, AtomInit::Symmetric).inversion(1.0), DomainError);
}

TEST_CASE("density invariants along a trajectory") {
    const auto p = params(0.25, 0.0, 0.1, model::FieldKind::Kerr, model::CouplingKind::BuckSukumar);
    for (auto init : {AtomInit::BothExcited, AtomInit::Symmetric}) {
        const auto ev = evolution(p, 10.0, init);
        for (double t = 0.0; t < 8.0; t += 0.37) {
            const auto rho = ev.atom_density(t);
            CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(rho.hermiticity_defect() < 1e-14);
            const double pur = dynamics::purity(rho);
            CHECK(pur >= 1.0 / 3.0 - 1e-12);
            CHECK(pur <= 1.0 + 1e-12);
            CHECK(ev.purity_closed_form(t) == doctest::Approx(pur).epsilon(1e-11));
            const double s = dynamics::field_entropy(rho);
            CHECK(s >= 0.0);
            CHECK(s <= std::log(3.0) + 1e-12);
            CHECK(dynamics::von_neumann_entropy(ev.field_density(t)) == doctest::Approx(s).epsilon(1e-9));
            const double c = dynamics::concurrence(rho);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0 + 1e-12);
            CHECK(ev.field_density(t).trace() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("concurrence of reference two-qubit states") {
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();  // (|gg> + |ee>)/sqrt2
    bell(0, 0) = bell(3, 3) = bell(0, 3) = bell(3, 0) = 0.5;
    CHECK(dynamics::concurrence(bell) == doctest::Approx(1.0));
    Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
    product(1, 1) = 1.0;
    CHECK(dynamics::concurrence(product) == doctest::Approx(0.0));
    for (double w : {0.2, 0.5, 0.9}) {
        const Eigen::Matrix4cd werner = w * bell + (1 - w) / 4 * Eigen::Matrix4cd::Identity();
        CHECK(dynamics::concurrence(werner) == doctest::Approx(std::max(0.0, (3 * w - 1) / 2)));
    }
}

TEST_CASE("two-qubit embedding of the symmetric state") {
    dynamics::AtomDensity rho;
    rho.rho(1, 1) = 1.0;
    const auto m = dynamics::embed_two_qubit(rho);
    CHECK(m(1, 1).real() == doctest::Approx(0.5));
    CHECK(m(2, 2).real() == doctest::Approx(0.5));
    CHECK(m(1, 2).real() == doctest::Approx(0.5));
    CHECK(dynamics::concurrence(rho) == doctest::Approx(1.0));
}

TEST_CASE("Husimi function of a coherent state") {
    const auto p = params(0.0, 0.0, 0.0, model::FieldKind::Standard, model::CouplingKind::BuckSukumar);
    const double mean_n = 4.0;
    const int n_max = 150;
    const dynamics::AnalyticEvolution ev(spectral::compute_spectra(p, n_max),
                                         dynamics::coherent_field(mean_n, 0.0, n_max));
    const auto rho = ev.field_density(0.0);
    const cplx alpha0(2.0, 0.0);
    for (cplx a : {cplx(0, 0), cplx(2, 0), cplx(1.5, -1.0), cplx(-1, 2)})
        CHECK(dynamics::husimi_q(rho, a) ==
              doctest::Approx(std::exp(-std::norm(a - alpha0)) / std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(dynamics::husimi_q(rho, cplx(9.0, 0.0)), DomainError);

    const auto grid = dynamics::husimi_grid(rho, {-3.0, 7.0, 201}, {-5.0, 5.0, 201});
    CHECK(grid.integral() == doctest::Approx(1.0).epsilon(1e-6));
    const auto lobes = dynamics::find_lobes(grid);
    REQUIRE(lobes.size() == 1);
    CHECK(lobes[0].re == doctest::Approx(2.0));
    CHECK(lobes[0].radius() == doctest::Approx(2.0));
}

TEST_CASE("coherent overlaps are normalised") {
    const auto v = dynamics::coherent_overlaps(cplx(1.2, 0.5), 60);
    double s = 0.0;
    for (auto c : v) s += std::norm(c);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}
