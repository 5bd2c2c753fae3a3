#pragma once

#include <Eigen/Dense>

namespace jcm::linalg {

/// Eigen-decomposition of a real symmetric matrix.
/// values are ascending; vectors(:, i) is the unit eigenvector for values(i).
struct SymmetricEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// rel_tol * ||a||_F (or an absolute floor for the zero matrix).
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double rel_tol = 1e-14);

/// Eigenvalues of a complex Hermitian matrix, ascending. Uses the real
/// symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum doubles each value.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

/// -sum x ln x over eigenvalues clipped to [0, 1]; values below 1e-14 contribute 0.
double entropy_from_eigenvalues(const Eigen::VectorXd& values);

}  // namespace jcm::linalg
