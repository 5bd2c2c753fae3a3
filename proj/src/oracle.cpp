#include "jcm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "jcm/errors.hpp"
#include "jcm/parallel.hpp"

namespace jcm::oracle {

namespace {

bool excited(int atom, int which) { return (atom >> (1 - which)) & 1; }

double sigma_z(int atom, int which) { return excited(atom, which) ? 1.0 : -1.0; }

}  // namespace

int joint_dim(int n_max) { return 4 * (n_max + 3); }

Eigen::MatrixXd build_joint_hamiltonian(const model::ModelParams& params, int n_max) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    params.check_tables(n_max);
    const int d = n_max + 3;
    const int dim = 4 * d;
    auto idx = [d](int atom, int m) { return atom * d + m; };
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    const double w0 = params.omega0();
    const double g = params.g();
    for (int atom = 0; atom < 4; ++atom) {
        const double z1 = sigma_z(atom, 0);
        const double z2 = sigma_z(atom, 1);
        for (int m = 0; m < d; ++m) {
            const int i = idx(atom, m);
            // omega0 n (h(n) - 1) + delta/2 (sz1 + sz2) + J sz1 sz2
            h(i, i) += w0 * m * (model::eval_h(params, m) - 1.0);
            h(i, i) += 0.5 * params.delta() * (z1 + z2);
            h(i, i) += params.J() * z1 * z2;
        }
    }

    // 2 kappa (s-1 s+2 + s+1 s-2): |e,g> <-> |g,e> at fixed m
    for (int m = 0; m < d; ++m) {
        h(idx(EG, m), idx(GE, m)) += 2.0 * params.kappa();
        h(idx(GE, m), idx(EG, m)) += 2.0 * params.kappa();
    }

    // g sigma_-^(j) f(n) a^dagger + h.c.: |..e..,m> -> |..g..,m+1> with amplitude g f(m+1) sqrt(m+1)
    for (int atom = 0; atom < 4; ++atom) {
        for (int which = 0; which < 2; ++which) {
            if (!excited(atom, which)) continue;
            const int lowered = atom & ~(1 << (1 - which));
            for (int m = 0; m + 1 < d; ++m) {
                const double amp = g * model::eval_f(params, m + 1) * std::sqrt(m + 1.0);
                h(idx(lowered, m + 1), idx(atom, m)) += amp;
                h(idx(atom, m), idx(lowered, m + 1)) += amp;
            }
        }
    }
    return h;
}

int excitation_number(int index, int n_max) {
    const int d = n_max + 3;
    const int atom = index / d;
    const int m = index % d;
    return m + (atom >> 1) + (atom & 1);
}

double max_cross_sector_element(const Eigen::MatrixXd& h, int n_max) {
    double worst = 0.0;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (excitation_number(i, n_max) != excitation_number(j, n_max))
                worst = std::max(worst, std::abs(h(i, j)));
    return worst;
}

JointState initial_state(const dynamics::FieldInit& field) {
    JointState psi;
    psi.n_max = field.n_max;
    psi.amps = Eigen::VectorXcd::Zero(joint_dim(field.n_max));
    const double s = 1.0 / std::sqrt(2.0);
    for (int n = 0; n <= field.n_max; ++n) {
        const cplx a = field.amplitudes[n];
        if (field.atom_init == dynamics::AtomInit::BothExcited) {
            psi.at(EE, n) = a;
        } else {
            psi.at(EG, n + 1) = s * a;
            psi.at(GE, n + 1) = s * a;
        }
    }
    return psi;
}

SymmetricEigen jacobi_max_pivot(const Eigen::MatrixXd& a_in, double rel_tol) {
    const int n = static_cast<int>(a_in.rows());
    Eigen::MatrixXd a = 0.5 * (a_in + a_in.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(a.norm(), 1e-300);
    const int max_rotations = 50 * n * n + 10;

    for (int rot = 0; rot < max_rotations; ++rot) {
        int p = 0, q = 0;
        double big = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(a(i, j)) > big) {
                    big = std::abs(a(i, j));
                    p = i;
                    q = j;
                }
        if (big <= rel_tol * scale) break;

        // Rotation angle from cot(2 phi) = (a_qq - a_pp) / (2 a_pq), smaller root.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
            const double apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    SymmetricEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    for (int i = 0; i < n; ++i) {
        out.values(i) = a(order[i], order[i]);
        out.vectors.col(i) = v.col(order[i]);
    }
    return out;
}

SectorPropagator::SectorPropagator(const Eigen::MatrixXd& h, int n_max) : n_max_(n_max) {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < h.rows(); ++i) groups[excitation_number(i, n_max)].push_back(i);
    for (auto& [k, idx] : groups) sectors_.push_back({std::move(idx), {}});

    parallel_for(sectors_.size(), [&](std::size_t s) {
        auto& sec = sectors_[s];
        const int n = static_cast<int>(sec.indices.size());
        Eigen::MatrixXd sub(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sub(i, j) = h(sec.indices[i], sec.indices[j]);
        sec.eig = jacobi_max_pivot(sub);
    });
}

JointState SectorPropagator::evolve(const JointState& psi0, double t) const {
    if (psi0.n_max != n_max_) throw DomainError("state and propagator disagree on n_max");
    JointState out;
    out.n_max = n_max_;
    out.t = psi0.t + t;
    out.amps = Eigen::VectorXcd::Zero(psi0.amps.size());
    for (const auto& sec : sectors_) {
        const int n = static_cast<int>(sec.indices.size());
        Eigen::VectorXcd local(n);
        for (int i = 0; i < n; ++i) local(i) = psi0.amps(sec.indices[i]);
        Eigen::VectorXcd proj = sec.eig.vectors.transpose() * local;
        for (int i = 0; i < n; ++i) proj(i) *= std::polar(1.0, -sec.eig.values(i) * t);
        local = sec.eig.vectors * proj;
        for (int i = 0; i < n; ++i) out.amps(sec.indices[i]) = local(i);
    }
    return out;
}

std::vector<double> SectorPropagator::eigenvalues() const {
    std::vector<double> out;
    for (const auto& sec : sectors_)
        for (int i = 0; i < sec.eig.values.size(); ++i) out.push_back(sec.eig.values(i));
    return out;
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& m) {
    CsrMatrix c;
    c.row_start.push_back(0);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) {
                c.cols.push_back(j);
                c.vals.push_back(m(i, j));
            }
        }
        c.row_start.push_back(static_cast<int>(c.cols.size()));
    }
    return c;
}

void CsrMatrix::multiply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const int n = rows();
    for (int i = 0; i < n; ++i) {
        cplx acc{};
        for (int k = row_start[i]; k < row_start[i + 1]; ++k) acc += vals[k] * x(cols[k]);
        y(i) = acc;
    }
}

JointState evolve_numeric(const CsrMatrix& h, const JointState& psi0, double t, double dt) {
    if (!(dt > 0.0)) throw DomainError("integrator step must be > 0");
    if (h.rows() != psi0.amps.size()) throw DomainError("state and Hamiltonian sizes differ");
    JointState out = psi0;
    out.t = psi0.t + t;
    if (t == 0.0) return out;

    const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / dt)));
    const double step = t / static_cast<double>(steps);
    const cplx mi{0.0, -step};  // -i dt
    const auto n = psi0.amps.size();
    Eigen::VectorXcd& y = out.amps;
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), tmp(n);

    for (long s = 0; s < steps; ++s) {
        h.multiply(y, k1);
        k1 *= mi;
        tmp = y + 0.5 * k1;
        h.multiply(tmp, k2);
        k2 *= mi;
        tmp = y + 0.5 * k2;
        h.multiply(tmp, k3);
        k3 *= mi;
        tmp = y + k3;
        h.multiply(tmp, k4);
        k4 *= mi;
        y += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    }

    const double drift = std::abs(out.norm() - psi0.norm());
    if (drift > 1e-8)
        throw NumericalError("RK4 norm drift " + std::to_string(drift) + " exceeds 1e-8; reduce dt");
    return out;
}

JointState evolve_numeric(const Eigen::MatrixXd& h, const JointState& psi0, double t, double dt) {
    return evolve_numeric(CsrMatrix::from_dense(h), psi0, t, dt);
}

Eigen::Matrix4cd partial_trace_field(const JointState& psi) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const int d = psi.field_dim();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            cplx s{};
            for (int m = 0; m < d; ++m) s += psi.at(a, m) * std::conj(psi.at(b, m));
            rho(a, b) = s;
        }
    return rho;
}

dynamics::FieldDensity partial_trace_atoms(const JointState& psi) {
    const int d = psi.field_dim();
    dynamics::FieldDensity out{Eigen::MatrixXcd::Zero(d, d)};
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) {
            cplx s{};
            for (int a = 0; a < 4; ++a) s += psi.at(a, m) * std::conj(psi.at(a, k));
            out.rho(m, k) = s;
        }
    return out;
}

double inversion(const JointState& psi) {
    double s = 0.0;
    const int d = psi.field_dim();
    for (int a = 0; a < 4; ++a) {
        const double z = 0.5 * (sigma_z(a, 0) + sigma_z(a, 1));
        for (int m = 0; m < d; ++m) s += z * std::norm(psi.at(a, m));
    }
    return s;
}

double energy(const Eigen::MatrixXd& h, const JointState& psi) {
    return psi.amps.dot(h * psi.amps).real();
}

double antisymmetric_weight(const JointState& psi) {
    double s = 0.0;
    for (int m = 0; m < psi.field_dim(); ++m)
        s += 0.5 * std::norm(psi.at(EG, m) - psi.at(GE, m));
    return s;
}

double buffer_population(const JointState& psi) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int m = psi.n_max + 1; m <= psi.n_max + 2; ++m) s += std::norm(psi.at(a, m));
    return s;
}

void check_buffer(const JointState& psi, double limit) {
    const double pop = buffer_population(psi);
    if (pop > limit)
        throw TruncationError("population " + std::to_string(pop) +
                                  " reached the top two Fock levels; raise n_max",
                              psi.n_max + 10);
}

}  // namespace jcm::oracle
