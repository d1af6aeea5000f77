#include "liquifbm/fbm.hpp"

#include "liquifbm/format.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace liquifbm {

double analytic_cov(double h, double t, double u) {
    check_hurst(h);
    if (!(t >= 0.0 && u >= 0.0)) throw DomainError("analytic_cov requires t, u >= 0");
    const double e = 2.0 * h;
    return 0.5 * (std::pow(t, e) + std::pow(u, e) - std::pow(std::abs(t - u), e));
}

void simulate_into(const KernelTable& table, const SeedRecord& seed, double* dw, double* bh) {
    const std::size_t n = table.grid.n;
    const double sd = std::sqrt(table.grid.dt());
    rng::fill_normals(seed, rng::Stream::Volterra, n, dw);
    for (std::size_t j = 0; j < n; ++j) dw[j] *= sd;
    bh[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double* z = table.cells.data() + KernelTable::offset(i);
        double s = 0.0;
        for (std::size_t j = 0; j < i; ++j) s += z[j] * dw[j];
        bh[i] = s;
    }
}

PathPair simulate_path_pair(const KernelTable& table, const SeedRecord& seed) {
    PathPair p;
    p.grid = table.grid;
    p.h = table.h;
    p.seed = seed;
    p.dw.resize(table.grid.n);
    p.bh.resize(table.grid.n + 1);
    simulate_into(table, seed, p.dw.data(), p.bh.data());
    return p;
}

std::vector<double> fbm_from_increments(const KernelTable& table, const std::vector<double>& dw) {
    const std::size_t n = table.grid.n;
    if (dw.size() != n) throw DomainError("increment vector does not match the grid");
    std::vector<double> bh(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < i; ++j) s += table.z(i, j) * dw[j];
        bh[i] = s;
    }
    return bh;
}

Eigen::MatrixXd fbm_covariance(double h, const TimeGrid& grid) {
    const std::size_t n = grid.n;
    Eigen::MatrixXd C(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k) C(i, k) = C(k, i) = analytic_cov(h, grid.t(i + 1), grid.t(k + 1));
    return C;
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& cov) {
    const Eigen::Index n = cov.rows();
    if (cov.cols() != n) throw DomainError("cholesky_lower: matrix is not square");
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = cov(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0) || !std::isfinite(d))
            throw NumericalError("covariance not positive definite: leading minor " + std::to_string(j + 1) +
                                 " has pivot " + std::to_string(d));
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = cov(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return L;
}

CholeskySampler::CholeskySampler(double h, const TimeGrid& grid) : grid_(grid) {
    check_hurst(h);
    if (grid.n > kMaxSteps) throw DomainError("cholesky sampler supports at most 2048 steps");
    L_ = cholesky_lower(fbm_covariance(h, grid));
}

std::vector<double> CholeskySampler::sample(const SeedRecord& seed) const {
    const std::size_t n = grid_.n;
    std::vector<double> xi(n);
    rng::fill_normals(seed, rng::Stream::Cholesky, n, xi.data());
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += L_(i, k) * xi[k];
        out[i + 1] = s;
    }
    return out;
}

std::vector<double> cholesky_sample(double h, const TimeGrid& grid, const SeedRecord& seed) {
    return CholeskySampler(h, grid).sample(seed);
}

void write_path_csv(std::ostream& os, const PathPair& path) {
    os << "t,w,bh\n";
    double w = 0.0;
    for (std::size_t i = 0; i <= path.grid.n; ++i) {
        if (i > 0) w += path.dw[i - 1];
        os << fmt15(path.grid.t(i)) << ',' << fmt15(w) << ',' << fmt15(path.bh[i]) << '\n';
    }
}

}  // namespace liquifbm
