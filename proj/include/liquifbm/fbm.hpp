#pragma once

#include "liquifbm/kernel.hpp"
#include "liquifbm/rng.hpp"
#include "liquifbm/types.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace liquifbm {

// cov(B_t, B_u) of fractional Brownian motion
double analytic_cov(double h, double t, double u);

// One scenario: Brownian increments and the fBm they drive.
struct PathPair {
    TimeGrid grid;
    double h = 0.5;
    std::vector<double> dw;  // size n, variance dt each
    std::vector<double> bh;  // size n+1, bh[0] = 0
    SeedRecord seed;
};

// bh[i] = sum_{j<i} z(i,j) dw[j]
PathPair simulate_path_pair(const KernelTable& table, const SeedRecord& seed);

// Fills dw (size n) and bh (size n+1) without allocating.
void simulate_into(const KernelTable& table, const SeedRecord& seed, double* dw, double* bh);

// bh at the grid nodes recomputed from given increments (construction identity)
std::vector<double> fbm_from_increments(const KernelTable& table, const std::vector<double>& dw);

// Covariance of (B_{t_1}, ..., B_{t_n}).
Eigen::MatrixXd fbm_covariance(double h, const TimeGrid& grid);

// Exact sampler from the dense covariance factor. Shares no code with the
// Volterra path; draws from its own random stream.
class CholeskySampler {
public:
    static constexpr std::size_t kMaxSteps = 2048;

    CholeskySampler(double h, const TimeGrid& grid);
    std::vector<double> sample(const SeedRecord& seed) const;  // size n+1, [0] = 0
    const Eigen::MatrixXd& factor() const { return L_; }

private:
    TimeGrid grid_;
    Eigen::MatrixXd L_;
};

std::vector<double> cholesky_sample(double h, const TimeGrid& grid, const SeedRecord& seed);

// Lower Cholesky factor; NumericalError names the first non-positive leading minor.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& cov);

// CSV with header t,w,bh
void write_path_csv(std::ostream& os, const PathPair& path);

}  // namespace liquifbm
