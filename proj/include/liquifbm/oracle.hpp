#pragma once

#include "liquifbm/kernel.hpp"
#include "liquifbm/montecarlo.hpp"
#include "liquifbm/types.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace liquifbm {

// Gaussian law of the node prices S_0..S_n written as S_i = mean[i] + sum_k L(i-1,k) xi_k
// for i >= 1 with xi i.i.d. standard normal; S_0 = mean[0] is deterministic.
// Coordinate xi_k becomes known together with the increment cell k.
struct GaussianPriceLaw {
    double T = 1.0;
    std::size_t n = 1;
    std::vector<double> mean;  // size n+1
    Eigen::MatrixXd L;         // n x n, lower triangular

    // exact fBm law from the covariance function
    static GaussianPriceLaw analytic(const MarketSpec& market, double T, std::size_t n);
    // law induced by a kernel table (the law the simulator samples)
    static GaussianPriceLaw from_table(const MarketSpec& market, const KernelTable& table);
};

struct DPRecursion {
    double T = 1.0, lambda = 1.0, phi0 = 0.0, s0 = 0.0;
    std::size_t n = 1;
    std::vector<std::size_t> observed;  // coordinates known at step i
    std::vector<double> a;              // quadratic coefficients, size n
    std::vector<double> b_mean;         // constant part of b_i
    std::vector<Eigen::VectorXd> b_load;  // loadings of b_i on xi (only observed entries nonzero)
    double expected_c0 = 0.0;           // E[c_0]
    double value = 0.0;                 // E[V_0(phi0)] - phi0 s0

    double dt() const { return T / static_cast<double>(n); }
};

constexpr std::size_t kMaxOracleSteps = 64;

// Backward dynamic programme for
//   max E[ -phi0 s0 - dt sum phi_i S_i - (lambda/2) dt sum phi_i^2 ],  phi_i G_i-measurable,
//   phi0 + dt sum phi_i = 0,
// over n <= 64 steps. Conditioning is exact (projection onto observed coordinates).
DPRecursion dp_solve(const LiquidationProblem& problem, const GaussianPriceLaw& law);
DPRecursion dp_solve(const LiquidationProblem& problem, std::size_t n);

double dp_value(const LiquidationProblem& problem, const GaussianPriceLaw& law);
double dp_value(const LiquidationProblem& problem, std::size_t n);

// Optimal feedback policy applied to one realization of xi.
std::vector<double> dp_policy(const DPRecursion& rec, const GaussianPriceLaw& law, const std::vector<double>& xi);

// A perturbation of the rate: p_i = sum_j load[i][j] xi_j for i < n-1, and
// p_{n-1} = -sum_{i<n-1} p_i so the terminal constraint still holds.
struct Perturbation {
    std::vector<std::vector<double>> load;  // (n-1) rows of n entries
};

// Throws DomainError if any row loads on a cell that is not yet observable.
void validate_adapted(const Perturbation& p, const TimeGrid& grid, const InformationFlow& info);

// Random adapted perturbation with i.i.d. N(0, amplitude^2 / (j-count)) loadings.
Perturbation random_perturbation(const TimeGrid& grid, const InformationFlow& info, double amplitude,
                                 std::uint64_t seed, std::uint64_t index);

// Per-path loss V(phi) - V(phi + eps p) of the optimal strategy, common random numbers.
MCEstimate perturbation_deficit(const LiquidationProblem& problem, const KernelTable& table,
                                const Perturbation& pert, double eps, std::size_t n_paths, std::uint64_t seed);

struct PerturbationReport {
    double base_value = 0.0, base_se = 0.0;
    std::vector<double> deficit, deficit_se;  // one per perturbation
    bool optimal = true;                       // no perturbation beats the base by more than 3 SE
};

PerturbationReport perturbation_check(const LiquidationProblem& problem, const TimeGrid& grid, std::size_t k,
                                      std::size_t n_paths, std::uint64_t seed, double eps = 1.0,
                                      double amplitude = 1.0);

}  // namespace liquifbm
