#include "liquifbm/montecarlo.hpp"

#include "liquifbm/parallel.hpp"
#include "liquifbm/quadrature.hpp"
#include "liquifbm/valuation.hpp"

#include <cmath>

namespace liquifbm {

double evaluate_pnl(const LiquidationProblem& problem, const PathPair& path, const StrategyPath& strat) {
    if (!(path.grid == strat.grid)) throw DomainError("evaluate_pnl: path and strategy grids differ");
    const TimeGrid& g = path.grid;
    const MarketSpec& m = problem.market;
    const double dt = g.dt();
    double trade = 0.0, cost = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double S = m.s0 + m.mu * g.t(i) + m.sigma * path.bh[i];
        trade += strat.phi[i] * S;
        cost += strat.phi[i] * strat.phi[i];
    }
    return -problem.phi0 * m.s0 - dt * trade - 0.5 * problem.lambda * dt * cost;
}

MCEstimate summarize(const std::vector<double>& samples) {
    MCEstimate e;
    const std::size_t N = samples.size();
    e.n_paths = N;
    if (N == 0) return e;
    e.mean = quad::pairwise_sum(samples) / static_cast<double>(N);
    if (N > 1) {
        std::vector<double> dev(N);
        for (std::size_t p = 0; p < N; ++p) dev[p] = (samples[p] - e.mean) * (samples[p] - e.mean);
        const double var = quad::pairwise_sum(dev) / static_cast<double>(N - 1);
        e.std_error = std::sqrt(var / static_cast<double>(N));
    }
    return e;
}

std::vector<double> pnl_samples(const LiquidationProblem& problem, const KernelTable& table, std::size_t n_paths,
                                std::uint64_t seed) {
    problem.validate();
    if (problem.market.h != table.h || problem.T != table.grid.T)
        throw DomainError("problem does not match the kernel table");
    const MartingaleRepr repr = martingale_repr(table, problem.info);
    std::vector<double> out(n_paths);
    parallel_for(n_paths, [&](std::size_t p) {
        const PathPair path = simulate_path_pair(table, SeedRecord{seed, p});
        const StrategyPath sp = generic_strategy(problem, table, repr, path);
        out[p] = evaluate_pnl(problem, path, sp);
    });
    return out;
}

MCEstimate mc_value(const LiquidationProblem& problem, const KernelTable& table, std::size_t n_paths,
                    std::uint64_t seed) {
    if (n_paths < 100) throw DomainError("mc_value needs at least 100 paths");
    MCEstimate e = summarize(pnl_samples(problem, table, n_paths, seed));
    e.grid = table.grid;
    e.seed = SeedRecord{seed, 0};
    return e;
}

MCEstimate mc_value(const LiquidationProblem& problem, const TimeGrid& grid, std::size_t n_paths,
                    std::uint64_t seed, DiagonalRule rule) {
    problem.validate();
    return mc_value(problem, build_table(grid, problem.market.h, rule), n_paths, seed);
}

Step1Report step1_identity_check(double h, double T, const InformationFlow& info, const TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed) {
    if (grid.T != T) throw DomainError("step1 check: grid horizon differs from T");
    if (n_paths < 100) throw DomainError("step1 check needs at least 100 paths");
    const KernelTable table = build_table(grid, h);
    const MartingaleRepr repr = martingale_repr(table, info);
    const std::size_t n = grid.n;
    const double dt = grid.dt();

    std::vector<double> lhs(n_paths), rhs(n_paths), diff(n_paths);
    parallel_for(n_paths, [&](std::size_t p) {
        const PathPair path = simulate_path_pair(table, SeedRecord{seed, p});
        const TrackingPath tp = tracking_path(table, repr, path);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += tp.p[i] * tp.n[i];
            b += tp.n[i] * tp.n[i];
        }
        lhs[p] = dt * a;
        rhs[p] = dt * b;
        diff[p] = lhs[p] - rhs[p];
    });

    Step1Report r;
    const MCEstimate el = summarize(lhs), er = summarize(rhs), ed = summarize(diff);
    r.lhs = el.mean;
    r.lhs_se = el.std_error;
    r.rhs = er.mean;
    r.rhs_se = er.std_error;
    r.diff_se = ed.std_error;
    r.closed_form = step1_rhs(h, T, info);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t e = repr.entry[j];
        if (e >= 1 && e < n) r.discrete_exact += repr.n_coeff[j] * repr.n_coeff[j] * dt * dt * static_cast<double>(n - e);
    }
    auto z = [](double d, double se) { return se > 0.0 ? d / se : (d == 0.0 ? 0.0 : HUGE_VAL); };
    r.z_lhs = z(r.lhs - r.closed_form, r.lhs_se);
    r.z_rhs = z(r.rhs - r.closed_form, r.rhs_se);
    r.z_diff = z(ed.mean, r.diff_se);
    return r;
}

}  // namespace liquifbm
