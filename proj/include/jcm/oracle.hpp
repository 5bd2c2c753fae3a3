#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "jcm/dynamics.hpp"
#include "jcm/model.hpp"

namespace jcm::oracle {

using cplx = std::complex<double>;

/// Atom labels in the computational basis, index 2 e1 + e2 (e = 1 excited).
enum AtomIndex : int { GG = 0, GE = 1, EG = 2, EE = 3 };

/// Amplitudes over |atom> (x) |m>, atom in [0, 4), m in [0, n_max + 2].
/// Storage index: atom * (n_max + 3) + m.
struct JointState {
    Eigen::VectorXcd amps;
    int n_max = 0;
    double t = 0.0;

    int field_dim() const { return n_max + 3; }
    cplx& at(int atom, int m) { return amps(atom * field_dim() + m); }
    cplx at(int atom, int m) const { return amps(atom * field_dim() + m); }
    double norm() const { return amps.norm(); }
};

int joint_dim(int n_max);

/// Interaction-picture Hamiltonian on the full truncated space, assembled
/// term by term from the operator definitions. Real symmetric.
Eigen::MatrixXd build_joint_hamiltonian(const model::ModelParams& params, int n_max);

/// m + e1 + e2 for a basis index.
int excitation_number(int index, int n_max);

/// Largest |H_ij| between states of different excitation number.
double max_cross_sector_element(const Eigen::MatrixXd& h, int n_max);

/// A_n |e,e,n> or A_n (|e,g> + |g,e>)/sqrt2 |n+1>.
JointState initial_state(const dynamics::FieldInit& field);

/// Eigen-decomposition of a real symmetric matrix by classical (largest
/// pivot first) Jacobi rotations. Ascending eigenvalues, eigenvectors in columns.
struct SymmetricEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

SymmetricEigen jacobi_max_pivot(const Eigen::MatrixXd& a, double rel_tol = 1e-15);

/// Exact propagation e^{-iHt}: every excitation-number sector is diagonalized
/// once and exponentiated per call.
class SectorPropagator {
public:
    SectorPropagator(const Eigen::MatrixXd& h, int n_max);

    JointState evolve(const JointState& psi0, double t) const;

    /// All eigenvalues, sector by sector.
    std::vector<double> eigenvalues() const;

private:
    struct Sector {
        std::vector<int> indices;
        SymmetricEigen eig;
    };
    int n_max_;
    std::vector<Sector> sectors_;
};

/// Compressed sparse rows of a real matrix.
struct CsrMatrix {
    std::vector<int> row_start;
    std::vector<int> cols;
    std::vector<double> vals;

    static CsrMatrix from_dense(const Eigen::MatrixXd& m);
    int rows() const { return static_cast<int>(row_start.size()) - 1; }
    void multiply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
};

/// Classical fixed-step RK4 on i dpsi/dt = H psi. The step is t / ceil(t / dt).
/// Throws NumericalError when the norm drifts by more than 1e-8.
JointState evolve_numeric(const CsrMatrix& h, const JointState& psi0, double t, double dt);
JointState evolve_numeric(const Eigen::MatrixXd& h, const JointState& psi0, double t, double dt);

/// Field traced out: 4x4 atom density in the {gg, ge, eg, ee} basis.
Eigen::Matrix4cd partial_trace_field(const JointState& psi);

/// Atoms traced out: field density on m = 0..n_max+2.
dynamics::FieldDensity partial_trace_atoms(const JointState& psi);

/// <(sigma_z1 + sigma_z2)/2>
double inversion(const JointState& psi);

/// <psi|H|psi>
double energy(const Eigen::MatrixXd& h, const JointState& psi);

/// Total weight on (|e,g> - |g,e>)/sqrt2 (x) |m>.
double antisymmetric_weight(const JointState& psi);

/// Population on the top two Fock levels m = n_max+1, n_max+2.
double buffer_population(const JointState& psi);

/// Throws TruncationError when buffer_population exceeds limit.
void check_buffer(const JointState& psi, double limit = 1e-10);

}  // namespace jcm::oracle
