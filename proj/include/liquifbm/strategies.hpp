#pragma once

#include "liquifbm/fbm.hpp"
#include "liquifbm/kernel.hpp"
#include "liquifbm/types.hpp"

#include <cstddef>
#include <vector>

namespace liquifbm {

// Number of increment cells visible when deciding at node t_i, i = 0..n-1.
// Cell j (over [s_j, s_{j+1}]) is visible once s_{j+1} <= t_i (standard),
// <= (t_i - delta)^+ (delayed) or <= min(t_i + delta, T) (insider).
std::vector<std::size_t> observed_cells(const TimeGrid& grid, const InformationFlow& info);

// Discrete martingale representation of M_k = E[dt * sum_i P_i | G_k], where
// P_i is the price the strategy reacts to (S itself, or its projection under
// delayed information). Everything is a linear functional of the increments.
struct MartingaleRepr {
    TimeGrid grid;
    double h = 0.5;
    InformationFlow info;
    std::vector<std::size_t> observed;  // o(i), i < n
    std::vector<double> loading;        // m_j: coefficient of dw_j in dt * sum_i P_i
    std::vector<double> m0_coeffs;      // m_j if cell j is visible at t_0, else 0
    std::vector<std::size_t> entry;     // first step at which cell j is visible (n if never)
    std::vector<double> n_coeff;        // m_j / (T - t_entry): coefficient of dw_j in N
    std::vector<double> k_cont;         // continuous-time loading of dM on dW at s_j
    double mean_time = 0.0;             // dt * sum_i t_i / T
};

MartingaleRepr martingale_repr(const KernelTable& table, const InformationFlow& info);

struct StrategyPath {
    TimeGrid grid;
    InformationFlow info;
    std::vector<double> phi;       // rate on [t_i, t_{i+1}), i < n
    std::vector<double> position;  // i = 0..n, position[n] = 0
    double residual = 0.0;         // phi0 + dt * sum phi before any correction
    bool corrected = false;        // residual exceeded rounding and moved into phi[n-1]
};

// Price seen through the delayed flow: s0 + mu t_i + sigma E[B_{t_i} | F_{(t_i-delta)^+}].
std::vector<double> project_price(const KernelTable& table, const PathPair& path, const MarketSpec& market,
                                  double delta);

// Optimal rate on one scenario:
//   phi_i = -phi0/T + ( M_0/T + N_i - P_i ) / lambda
// with N_i = sum_j n_coeff[j] dw[j] over cells entered at steps 1..i.
StrategyPath generic_strategy(const LiquidationProblem& problem, const KernelTable& table,
                              const MartingaleRepr& repr, const PathPair& path);

StrategyPath standard_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path);
StrategyPath delayed_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path);
StrategyPath insider_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path);

// Realized N path (size n) and the reacting price P (size n) for one scenario,
// with unit sigma and no drift. Used by the martingale identity check.
struct TrackingPath {
    std::vector<double> n;
    std::vector<double> p;
    double m0 = 0.0;
};
TrackingPath tracking_path(const KernelTable& table, const MartingaleRepr& repr, const PathPair& path);

// True if cell j may influence phi[i] under the flow.
bool cell_allowed(const TimeGrid& grid, const InformationFlow& info, std::size_t i, std::size_t j);

}  // namespace liquifbm
