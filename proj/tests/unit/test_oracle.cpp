#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "jcm/dynamics.hpp"
#include "jcm/errors.hpp"
#include "jcm/oracle.hpp"

using namespace jcm;

namespace {

model::ModelParams params(double kappa, double J, double chi, double delta = 0.0) {
    model::ModelSpec s;
    s.kappa = kappa;
    s.J_ising = J;
    s.chi = chi;
    s.omega = 1.0 + delta;
    s.h.kind = model::FieldKind::Kerr;
    s.f.kind = model::CouplingKind::BuckSukumar;
    return model::ModelParams(s);
}

}  // namespace

TEST_CASE("joint Hamiltonian structure") {
    const auto p = params(0.3, 0.1, 0.05, 0.2);
    const int n_max = 8;
    const auto h = oracle::build_joint_hamiltonian(p, n_max);
    CHECK(h.rows() == oracle::joint_dim(n_max));
    CHECK(h.rows() == 4 * (n_max + 3));
    CHECK((h - h.transpose()).norm() == 0.0);
    CHECK(oracle::max_cross_sector_element(h, n_max) == 0.0);
    CHECK(oracle::excitation_number(oracle::EE * (n_max + 3) + 2, n_max) == 4);
    CHECK(oracle::excitation_number(oracle::GG * (n_max + 3) + 2, n_max) == 2);
}

TEST_CASE("sector spectrum contains every block spectrum and the antisymmetric levels") {
    const auto p = params(0.3, 0.1, 0.05, 0.2);
    const int n_max = 6;
    const oracle::SectorPropagator prop(oracle::build_joint_hamiltonian(p, n_max), n_max);
    auto ev = prop.eigenvalues();
    std::sort(ev.begin(), ev.end());
    auto contains = [&](double e) {
        return std::any_of(ev.begin(), ev.end(), [&](double v) { return std::abs(v - e) < 1e-11; });
    };
    for (int n = 0; n + 2 <= n_max + 2; ++n)
        for (double e : spectral::compute_spectrum(p, n).energies) CHECK(contains(e));
    for (int m = 1; m <= n_max + 2; ++m) {
        const double field = 1.0 * m * (model::eval_h(p, m) - 1.0);
        CHECK(contains(field - 2 * p.kappa() - p.J()));
    }
}

TEST_CASE("jacobi_max_pivot") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 2, 1;
    const auto e = oracle::jacobi_max_pivot(a);
    CHECK(e.values(0) == doctest::Approx(-1.0));
    CHECK(e.values(1) == doctest::Approx(3.0));
    CHECK((a * e.vectors - e.vectors * e.values.asDiagonal()).norm() < 1e-14);
}

TEST_CASE("initial states") {
    const auto f = dynamics::coherent_field(3.0, 0.0, 30, dynamics::AtomInit::Symmetric);
    const auto psi = oracle::initial_state(f);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(psi.at(oracle::EG, 1) == psi.at(oracle::GE, 1));
    CHECK(std::abs(psi.at(oracle::EG, 0)) == 0.0);
    CHECK(oracle::antisymmetric_weight(psi) < 1e-30);
    CHECK(oracle::inversion(psi) == doctest::Approx(0.0));
    const auto ee = oracle::initial_state(dynamics::coherent_field(3.0, 0.0, 30));
    CHECK(oracle::inversion(ee) == doctest::Approx(1.0));
    const Eigen::Matrix4cd rho = oracle::partial_trace_field(ee);
    CHECK(rho(oracle::EE, oracle::EE).real() == doctest::Approx(1.0));
    CHECK(oracle::partial_trace_atoms(ee).trace() == doctest::Approx(1.0));
}

TEST_CASE("RK4 and sector propagation agree; energy and norm are conserved") {
    const auto p = params(0.2, 0.0, 0.0);
    const int n_max = 30;
    const auto h = oracle::build_joint_hamiltonian(p, n_max);
    const auto csr = oracle::CsrMatrix::from_dense(h);
    const oracle::SectorPropagator prop(h, n_max);
    const auto psi0 = oracle::initial_state(dynamics::coherent_field(4.0, 0.2, n_max));

    Eigen::VectorXcd y(h.rows());
    csr.multiply(psi0.amps, y);
    CHECK((y - h.cast<std::complex<double>>() * psi0.amps).norm() < 1e-13);

    const auto a = oracle::evolve_numeric(csr, psi0, 3.0, 1e-3);
    const auto b = prop.evolve(psi0, 3.0);
    CHECK((a.amps - b.amps).norm() < 1e-7);
    CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(oracle::energy(h, b) == doctest::Approx(oracle::energy(h, psi0)).epsilon(1e-12));
    const auto c = oracle::evolve_numeric(h, psi0, 3.0, 1e-3);
    CHECK((c.amps - a.amps).norm() < 1e-12);
}

TEST_CASE("RK4 with a step far too large trips the norm guard") {
    const auto p = params(0.2, 0.0, 0.0);
    const int n_max = 30;
    const auto h = oracle::build_joint_hamiltonian(p, n_max);
    const auto psi0 = oracle::initial_state(dynamics::coherent_field(4.0, 0.0, n_max));
    CHECK_THROWS_AS(oracle::evolve_numeric(h, psi0, 5.0, 0.5), NumericalError);
}

TEST_CASE("buffer guard") {
    const auto p = params(0.0, 0.0, 0.0);
    const int n_max = 16;
    oracle::JointState psi;
    psi.n_max = n_max;
    psi.amps = Eigen::VectorXcd::Zero(oracle::joint_dim(n_max));
    psi.at(oracle::GG, n_max + 2) = 1.0;
    CHECK(oracle::buffer_population(psi) == doctest::Approx(1.0));
    CHECK_THROWS_AS(oracle::check_buffer(psi), TruncationError);
    const auto ok = oracle::initial_state(dynamics::coherent_field(1.0, 0.0, n_max));
    const oracle::SectorPropagator prop(oracle::build_joint_hamiltonian(p, n_max), n_max);
    CHECK_NOTHROW(oracle::check_buffer(prop.evolve(ok, 2.0)));
}
