#pragma once

#include "liquifbm/fbm.hpp"
#include "liquifbm/kernel.hpp"
#include "liquifbm/rng.hpp"
#include "liquifbm/strategies.hpp"
#include "liquifbm/types.hpp"

#include <cstddef>
#include <vector>

namespace liquifbm {

// Left-point P&L: -phi0 s0 - dt sum phi_i S_i - (lambda/2) dt sum phi_i^2,
// always against the true price S_i = s0 + mu t_i + sigma bh[i].
double evaluate_pnl(const LiquidationProblem& problem, const PathPair& path, const StrategyPath& strat);

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    TimeGrid grid;
    SeedRecord seed;  // path field unused; paths are 0..n_paths-1
};

// Mean and standard error of a sample, reduced pairwise in index order.
MCEstimate summarize(const std::vector<double>& samples);

// Per-path P&L of the optimal strategy for problem.info; path p uses
// SeedRecord{seed, p}, so equal seeds give common random numbers.
std::vector<double> pnl_samples(const LiquidationProblem& problem, const KernelTable& table, std::size_t n_paths,
                                std::uint64_t seed);

MCEstimate mc_value(const LiquidationProblem& problem, const TimeGrid& grid, std::size_t n_paths,
                    std::uint64_t seed, DiagonalRule rule = DiagonalRule::EnergyPreserving);
MCEstimate mc_value(const LiquidationProblem& problem, const KernelTable& table, std::size_t n_paths,
                    std::uint64_t seed);

struct Step1Report {
    double lhs = 0.0, lhs_se = 0.0;    // E dt sum P_i N_i
    double rhs = 0.0, rhs_se = 0.0;    // E dt sum N_i^2
    double diff_se = 0.0;              // standard error of the paired difference
    double closed_form = 0.0;          // continuous-time E int N^2
    double discrete_exact = 0.0;       // exact expectation of the discrete rhs
    double z_lhs = 0.0, z_rhs = 0.0, z_diff = 0.0;  // versus closed_form, and lhs - rhs
};

// Monte Carlo check of E int P N dt = E int N^2 dt (P = S, or its delayed projection).
Step1Report step1_identity_check(double h, double T, const InformationFlow& info, const TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed);

}  // namespace liquifbm
