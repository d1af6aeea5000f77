#include "liquifbm/strategies.hpp"

#include "liquifbm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace liquifbm {

namespace {

std::size_t delay_cells(const TimeGrid& grid, double delta) {
    return static_cast<std::size_t>(std::ceil(delta / grid.dt() - 1e-9));
}

std::size_t lead_cells(const TimeGrid& grid, double delta) {
    return static_cast<std::size_t>(std::floor(delta / grid.dt() + 1e-9));
}

std::size_t observed_at(const TimeGrid& grid, const InformationFlow& info, std::size_t i) {
    switch (info.kind) {
        case InfoKind::Standard: return i;
        case InfoKind::Delayed: {
            const std::size_t d = delay_cells(grid, info.delta);
            return i > d ? i - d : 0;
        }
        case InfoKind::Insider: return std::min(grid.n, i + lead_cells(grid, info.delta));
    }
    return i;
}

void check_same_setup(const LiquidationProblem& problem, const KernelTable& table, const MartingaleRepr& repr,
                      const PathPair& path) {
    problem.validate();
    if (!(table.grid == path.grid) || !(table.grid == repr.grid))
        throw DomainError("strategy inputs live on different grids");
    if (problem.T != table.grid.T) throw DomainError("problem horizon differs from the grid horizon");
    if (problem.market.h != table.h || repr.h != table.h || path.h != table.h)
        throw DomainError("Hurst index differs between problem, table and path");
    if (problem.info.kind != repr.info.kind ||
        (problem.info.kind != InfoKind::Standard && problem.info.delta != repr.info.delta))
        throw DomainError("information flow of the problem does not match the representation");
}

}  // namespace

std::vector<std::size_t> observed_cells(const TimeGrid& grid, const InformationFlow& info) {
    info.validate(grid.T);
    std::vector<std::size_t> o(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) o[i] = observed_at(grid, info, i);
    return o;
}

bool cell_allowed(const TimeGrid& grid, const InformationFlow& info, std::size_t i, std::size_t j) {
    return j < observed_at(grid, info, i);
}

MartingaleRepr martingale_repr(const KernelTable& table, const InformationFlow& info) {
    const TimeGrid& g = table.grid;
    const std::size_t n = g.n;
    const double dt = g.dt();
    info.validate(g.T);

    MartingaleRepr r;
    r.grid = g;
    r.h = table.h;
    r.info = info;
    r.observed = observed_cells(g, info);

    // column sums of the (possibly truncated) kernel rows the strategy reacts to
    std::vector<double> colsum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t lim = std::min(i, r.observed[i]);
        const double* z = table.cells.data() + KernelTable::offset(i);
        for (std::size_t j = 0; j < lim; ++j) colsum[j] += z[j];
    }

    r.loading.resize(n);
    r.m0_coeffs.assign(n, 0.0);
    r.entry.assign(n, n);
    r.n_coeff.assign(n, 0.0);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        r.loading[j] = dt * colsum[j];
        while (k < n && r.observed[k] <= j) ++k;
        r.entry[j] = k;
        if (k == 0) {
            r.m0_coeffs[j] = r.loading[j];
        } else if (k < n) {
            // dt cancels between m_j and T - t_k = (n-k) dt
            r.n_coeff[j] = colsum[j] / static_cast<double>(n - k);
        }
    }

    double tsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) tsum += g.t(i);
    r.mean_time = dt * tsum / g.T;

    // continuous-time loadings, for diagnostics and cross-checks
    r.k_cont.assign(n, 0.0);
    if (info.kind == InfoKind::Delayed) {
        const double T = g.T, D = info.delta;
        if (table.h == 0.5) {
            for (std::size_t j = 0; j < n; ++j) r.k_cont[j] = std::max(0.0, T - D - g.t(j));
            r.k_cont[0] = std::max(0.0, T - D - 0.5 * std::min(dt, T - D));
        } else {
            const MolchanGolosov mg(table.h);
            for (std::size_t j = 1; j < n; ++j) {
                const double s = g.t(j);
                r.k_cont[j] = (s + D < T) ? mg.k(s, s + D, T) : 0.0;
            }
            const double w = std::min(dt, T - D);
            if (w > 0.0) {
                const double p = -std::abs(2.0 * table.h - 1.0);
                r.k_cont[0] = quad::graded([&](double s) { return mg.k(s, s + D, T); }, 0.0, w, p, 0.0) / w;
            }
        }
    } else {
        r.k_cont = table.k_vals;
    }
    return r;
}

std::vector<double> project_price(const KernelTable& table, const PathPair& path, const MarketSpec& market,
                                  double delta) {
    const TimeGrid& g = table.grid;
    if (!(g == path.grid)) throw DomainError("project_price: path and table grids differ");
    if (!(delta > 0.0 && delta <= g.T)) throw DomainError("project_price: delta must lie in (0, T]");
    const std::size_t d = delay_cells(g, delta);
    std::vector<double> out(g.n + 1);
    for (std::size_t i = 0; i <= g.n; ++i) {
        const std::size_t lim = i > d ? i - d : 0;
        double s = 0.0;
        for (std::size_t j = 0; j < lim; ++j) s += table.z(i, j) * path.dw[j];
        out[i] = market.s0 + market.mu * g.t(i) + market.sigma * s;
    }
    return out;
}

TrackingPath tracking_path(const KernelTable& table, const MartingaleRepr& repr, const PathPair& path) {
    const std::size_t n = table.grid.n;
    TrackingPath tp;
    tp.n.resize(n);
    tp.p.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        if (repr.entry[j] == 0) tp.m0 += repr.m0_coeffs[j] * path.dw[j];
    const bool projected = repr.info.kind == InfoKind::Delayed;
    double N = 0.0;
    std::size_t jj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (jj < n && repr.entry[jj] <= i) {
            if (repr.entry[jj] >= 1) N += repr.n_coeff[jj] * path.dw[jj];
            ++jj;
        }
        tp.n[i] = N;
        if (projected) {
            double s = 0.0;
            const std::size_t lim = std::min(i, repr.observed[i]);
            const double* z = table.cells.data() + (i > 0 ? KernelTable::offset(i) : 0);
            for (std::size_t j = 0; j < lim; ++j) s += z[j] * path.dw[j];
            tp.p[i] = s;
        } else {
            tp.p[i] = path.bh[i];
        }
    }
    return tp;
}

StrategyPath generic_strategy(const LiquidationProblem& problem, const KernelTable& table,
                              const MartingaleRepr& repr, const PathPair& path) {
    check_same_setup(problem, table, repr, path);
    const TimeGrid& g = table.grid;
    const std::size_t n = g.n;
    const double dt = g.dt(), T = g.T;
    const double lam = problem.lambda, sig = problem.market.sigma, mu = problem.market.mu;

    const TrackingPath tp = tracking_path(table, repr, path);

    StrategyPath sp;
    sp.grid = g;
    sp.info = problem.info;
    sp.phi.resize(n);
    sp.position.resize(n + 1);
    const double base = -problem.phi0 / T;
    const double m0 = tp.m0 / T;
    for (std::size_t i = 0; i < n; ++i) {
        const double drift = mu * (repr.mean_time - g.t(i));
        sp.phi[i] = base + (drift + sig * (m0 + tp.n[i] - tp.p[i])) / lam;
    }

    sp.position[0] = problem.phi0;
    double abs_flow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sp.position[i + 1] = sp.position[i] + sp.phi[i] * dt;
        abs_flow += std::abs(sp.phi[i]) * dt;
    }
    sp.residual = sp.position[n];
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(problem.phi0) + abs_flow);
    if (std::abs(sp.residual) > floor) {
        sp.phi[n - 1] -= sp.residual / dt;
        sp.corrected = true;
    }
    sp.position[n] = 0.0;
    return sp;
}

namespace {
StrategyPath variant(InfoKind kind, const LiquidationProblem& problem, const KernelTable& table,
                     const PathPair& path) {
    if (problem.info.kind != kind)
        throw DomainError("strategy variant called with a " + to_string(problem.info.kind) + " flow");
    return generic_strategy(problem, table, martingale_repr(table, problem.info), path);
}
}  // namespace

StrategyPath standard_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path) {
    return variant(InfoKind::Standard, problem, table, path);
}

StrategyPath delayed_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path) {
    return variant(InfoKind::Delayed, problem, table, path);
}

StrategyPath insider_strategy(const LiquidationProblem& problem, const KernelTable& table, const PathPair& path) {
    return variant(InfoKind::Insider, problem, table, path);
}

}  // namespace liquifbm
