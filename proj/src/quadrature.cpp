#include "liquifbm/quadrature.hpp"

#include "liquifbm/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace liquifbm::quad {

Rule gauss_jacobi(std::size_t n, double a, double b) {
    if (n == 0) throw DomainError("gauss_jacobi: need at least one node");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

    const double ab = a + b;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(n > 1 ? n - 1 : 1);

    // three-term recurrence of the monic Jacobi polynomials
    diag(0) = (b - a) / (ab + 2.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + ab;
        diag(k) = (b * b - a * a) / (s * (s + 2.0));
        double beta;
        if (k == 1) {
            // (1+a+b) cancels analytically; keeps a+b = -1 well defined
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off(k - 1) = std::sqrt(beta);
    }

    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    if (n == 1) {
        r.x[0] = diag(0);
        r.w[0] = mu0;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("gauss_jacobi: eigen solver failed");
    for (std::size_t k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        r.w[k] = mu0 * v0 * v0;
    }
    return r;
}

Rule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule jacobi_unit(std::size_t n, double p) {
    Rule r = gauss_jacobi(n, 0.0, p);
    const double scale = std::pow(2.0, -p - 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        r.x[k] = 0.5 * (1.0 + r.x[k]);
        r.w[k] *= scale;
    }
    return r;
}

Rule legendre_unit(std::size_t n) { return jacobi_unit(n, 0.0); }

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += v[k];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace liquifbm::quad
