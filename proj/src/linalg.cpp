#include "jcm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace jcm::linalg {

namespace {

double off_norm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, double rel_tol) {
    const Eigen::Index n = input.rows();
    Eigen::MatrixXd a = 0.5 * (input + input.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

    const double scale = a.norm();
    const double target = scale > 0.0 ? rel_tol * scale : 0.0;
    int sweeps = 0;

    while (sweeps < 100 && off_norm(a) > target) {
        ++sweeps;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rutishauser's stable rotation.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p);
                        const double arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweeps;
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd big(2 * n, 2 * n);
    big.topLeftCorner(n, n) = h.real();
    big.bottomRightCorner(n, n) = h.real();
    big.topRightCorner(n, n) = -h.imag();
    big.bottomLeftCorner(n, n) = h.imag();

    const auto eig = jacobi_eigen(big);
    Eigen::VectorXd out(n);
    for (Eigen::Index k = 0; k < n; ++k)
        out(k) = 0.5 * (eig.values(2 * k) + eig.values(2 * k + 1));
    return out;
}

double entropy_from_eigenvalues(const Eigen::VectorXd& values) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double x = std::clamp(values(i), 0.0, 1.0);
        if (x < 1e-14) continue;
        s -= x * std::log(x);
    }
    return s;
}

}  // namespace jcm::linalg
