#include <doctest.h>

#include <cmath>
#include <random>

#include "jcm/linalg.hpp"

using namespace jcm;

TEST_CASE("jacobi_eigen on a known matrix") {
    Eigen::MatrixXd a(3, 3);
    a << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    const auto e = linalg::jacobi_eigen(a);
    CHECK(e.values(0) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(e.values(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.values(2) == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK((a * e.vectors - e.vectors * e.values.asDiagonal()).norm() < 1e-13);
    CHECK((e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("jacobi_eigen property: reconstruction of random symmetric matrices") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int dim : {1, 2, 5, 12}) {
        Eigen::MatrixXd a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
        const auto e = linalg::jacobi_eigen(a);
        const Eigen::MatrixXd back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
        CHECK((back - a).norm() < 1e-12 * (1 + a.norm()));
        for (int i = 1; i < dim; ++i) CHECK(e.values(i - 1) <= e.values(i));
    }
    CHECK(linalg::jacobi_eigen(Eigen::MatrixXd::Zero(3, 3)).values.norm() == 0.0);
}

TEST_CASE("hermitian eigenvalues") {
    Eigen::MatrixXcd sy(2, 2);
    sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    const auto v = linalg::hermitian_eigenvalues(sy);
    REQUIRE(v.size() == 2);
    CHECK(v(0) == doctest::Approx(-1.0));
    CHECK(v(1) == doctest::Approx(1.0));
}

TEST_CASE("entropy of eigenvalue lists") {
    Eigen::VectorXd pure(3);
    pure << 0, 1, 0;
    CHECK(linalg::entropy_from_eigenvalues(pure) == 0.0);
    Eigen::VectorXd mixed(3);
    mixed << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    CHECK(linalg::entropy_from_eigenvalues(mixed) == doctest::Approx(std::log(3.0)));
    Eigen::VectorXd noisy(2);
    noisy << -1e-17, 1.0 + 1e-17;
    CHECK(linalg::entropy_from_eigenvalues(noisy) == 0.0);
}
