#include "liquifbm/oracle.hpp"

#include "liquifbm/fbm.hpp"
#include "liquifbm/parallel.hpp"
#include "liquifbm/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace liquifbm {

namespace {

// Coordinates known when deciding at step i; written out here rather than
// borrowed from the strategy code.
std::size_t known_coords(double T, std::size_t n, const InformationFlow& info, std::size_t i) {
    const double dt = T / static_cast<double>(n);
    switch (info.kind) {
        case InfoKind::Standard: return i;
        case InfoKind::Delayed: {
            const auto lag = static_cast<std::size_t>(std::ceil(info.delta / dt - 1e-9));
            return i > lag ? i - lag : 0;
        }
        case InfoKind::Insider: {
            const auto lead = static_cast<std::size_t>(std::floor(info.delta / dt + 1e-9));
            return std::min(n, i + lead);
        }
    }
    return i;
}

struct Affine {
    double mean = 0.0;
    Eigen::VectorXd load;
};

Affine projected_price(const GaussianPriceLaw& law, std::size_t i, std::size_t known) {
    Affine s{law.mean[i], Eigen::VectorXd::Zero(static_cast<Eigen::Index>(law.n))};
    if (i >= 1) {
        const std::size_t lim = std::min(known, i);
        for (std::size_t k = 0; k < lim; ++k) s.load(k) = law.L(i - 1, k);
    }
    return s;
}

}  // namespace

GaussianPriceLaw GaussianPriceLaw::analytic(const MarketSpec& market, double T, std::size_t n) {
    market.validate();
    if (!(T > 0.0)) throw DomainError("price law: T must be positive");
    if (n < 1 || n > kMaxOracleSteps) throw DomainError("price law: n must lie in [1, 64]");
    GaussianPriceLaw law;
    law.T = T;
    law.n = n;
    law.mean.resize(n + 1);
    const double dt = T / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) law.mean[i] = market.s0 + market.mu * dt * static_cast<double>(i);
    Eigen::MatrixXd C(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
            C(i, k) = C(k, i) =
                analytic_cov(market.h, dt * static_cast<double>(i + 1), dt * static_cast<double>(k + 1));
    // factor the unit covariance so that sigma = 0 stays well defined
    law.L = market.sigma * cholesky_lower(C);
    return law;
}

GaussianPriceLaw GaussianPriceLaw::from_table(const MarketSpec& market, const KernelTable& table) {
    market.validate();
    if (market.h != table.h) throw DomainError("price law: market and table Hurst index differ");
    const TimeGrid& g = table.grid;
    GaussianPriceLaw law;
    law.T = g.T;
    law.n = g.n;
    law.mean.resize(g.n + 1);
    for (std::size_t i = 0; i <= g.n; ++i) law.mean[i] = market.s0 + market.mu * g.t(i);
    law.L = Eigen::MatrixXd::Zero(g.n, g.n);
    const double scale = market.sigma * std::sqrt(g.dt());
    for (std::size_t i = 1; i <= g.n; ++i)
        for (std::size_t j = 0; j < i; ++j) law.L(i - 1, j) = scale * table.z(i, j);
    return law;
}

DPRecursion dp_solve(const LiquidationProblem& problem, const GaussianPriceLaw& law) {
    problem.validate();
    if (law.T != problem.T) throw DomainError("dp_solve: price law horizon differs from the problem");
    const std::size_t n = law.n;
    if (n < 1 || n > kMaxOracleSteps) throw DomainError("dp_solve: n must lie in [1, 64]");

    DPRecursion r;
    r.T = problem.T;
    r.lambda = problem.lambda;
    r.phi0 = problem.phi0;
    r.s0 = problem.market.s0;
    r.n = n;
    const double dt = r.dt(), lam = r.lambda;
    r.observed.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.observed[i] = known_coords(r.T, n, problem.info, i);
    r.a.assign(n, 0.0);
    r.b_mean.assign(n, 0.0);
    r.b_load.assign(n, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));

    // last step is forced: phi = -Q/dt
    r.a[n - 1] = lam / dt;
    {
        const Affine s = projected_price(law, n - 1, r.observed[n - 1]);
        r.b_mean[n - 1] = s.mean;
        r.b_load[n - 1] = s.load;
    }
    double ec = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        const std::size_t known = r.observed[i];
        Eigen::VectorXd beta = r.b_load[i + 1];
        for (std::size_t k = known; k < n; ++k) beta(k) = 0.0;
        const double beta_mean = r.b_mean[i + 1];
        const Affine s = projected_price(law, i, known);

        const double A = lam + r.a[i + 1] * dt;
        if (!(A > 0.0)) throw NumericalError("dp_solve: curvature lost at step " + std::to_string(i));
        r.a[i] = r.a[i + 1] * lam / A;

        const double dm = beta_mean - s.mean;
        ec += dt * (dm * dm + (beta - s.load).squaredNorm()) / (2.0 * A);

        r.b_mean[i] = (lam * beta_mean + r.a[i + 1] * dt * s.mean) / A;
        r.b_load[i] = (lam * beta + r.a[i + 1] * dt * s.load) / A;
    }
    r.expected_c0 = ec;
    const double q = problem.phi0;
    r.value = -q * r.s0 - 0.5 * r.a[0] * q * q + r.b_mean[0] * q + ec;
    if (!std::isfinite(r.value)) throw NumericalError("dp_solve: value is not finite");
    return r;
}

DPRecursion dp_solve(const LiquidationProblem& problem, std::size_t n) {
    return dp_solve(problem, GaussianPriceLaw::analytic(problem.market, problem.T, n));
}

double dp_value(const LiquidationProblem& problem, const GaussianPriceLaw& law) {
    return dp_solve(problem, law).value;
}

double dp_value(const LiquidationProblem& problem, std::size_t n) { return dp_solve(problem, n).value; }

std::vector<double> dp_policy(const DPRecursion& rec, const GaussianPriceLaw& law, const std::vector<double>& xi) {
    const std::size_t n = rec.n;
    if (law.n != n || xi.size() != n) throw DomainError("dp_policy: dimension mismatch");
    const double dt = rec.dt(), lam = rec.lambda;
    std::vector<double> phi(n);
    double Q = rec.phi0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t known = rec.observed[i];
        double beta = rec.b_mean[i + 1];
        for (std::size_t k = 0; k < known; ++k) beta += rec.b_load[i + 1](k) * xi[k];
        double shat = law.mean[i];
        if (i >= 1)
            for (std::size_t k = 0; k < std::min(known, i); ++k) shat += law.L(i - 1, k) * xi[k];
        const double A = lam + rec.a[i + 1] * dt;
        phi[i] = (beta - shat - rec.a[i + 1] * Q) / A;
        Q += dt * phi[i];
    }
    phi[n - 1] = -Q / dt;
    return phi;
}

void validate_adapted(const Perturbation& p, const TimeGrid& grid, const InformationFlow& info) {
    const std::size_t n = grid.n;
    if (p.load.size() != n - 1) throw DomainError("perturbation needs n-1 loading rows");
    const std::vector<std::size_t> o = observed_cells(grid, info);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (p.load[i].size() != n) throw DomainError("perturbation row has the wrong length");
        for (std::size_t j = o[i]; j < n; ++j)
            if (p.load[i][j] != 0.0)
                throw DomainError("perturbation is not adapted: step " + std::to_string(i) + " loads on cell " +
                                  std::to_string(j));
    }
}

Perturbation random_perturbation(const TimeGrid& grid, const InformationFlow& info, double amplitude,
                                 std::uint64_t seed, std::uint64_t index) {
    const std::size_t n = grid.n;
    const std::vector<std::size_t> o = observed_cells(grid, info);
    Perturbation p;
    p.load.assign(n - 1, std::vector<double>(n, 0.0));
    const SeedRecord rec{seed, index};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double scale = amplitude / std::sqrt(static_cast<double>(std::max<std::size_t>(1, o[i])));
        for (std::size_t j = 0; j < o[i]; ++j)
            p.load[i][j] = scale * rng::normal(rec, rng::Stream::Perturbation, i * n + j);
    }
    return p;
}

MCEstimate perturbation_deficit(const LiquidationProblem& problem, const KernelTable& table,
                                const Perturbation& pert, double eps, std::size_t n_paths, std::uint64_t seed) {
    const TimeGrid& g = table.grid;
    validate_adapted(pert, g, problem.info);
    const MartingaleRepr repr = martingale_repr(table, problem.info);
    const std::size_t n = g.n;
    const double isd = 1.0 / std::sqrt(g.dt());
    std::vector<double> out(n_paths);
    parallel_for(n_paths, [&](std::size_t p) {
        const PathPair path = simulate_path_pair(table, SeedRecord{seed, p});
        const StrategyPath sp = generic_strategy(problem, table, repr, path);
        StrategyPath alt = sp;
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v += pert.load[i][j] * path.dw[j] * isd;
            alt.phi[i] += eps * v;
            total += v;
        }
        alt.phi[n - 1] -= eps * total;
        out[p] = evaluate_pnl(problem, path, sp) - evaluate_pnl(problem, path, alt);
    });
    MCEstimate e = summarize(out);
    e.grid = g;
    e.seed = SeedRecord{seed, 0};
    return e;
}

PerturbationReport perturbation_check(const LiquidationProblem& problem, const TimeGrid& grid, std::size_t k,
                                      std::size_t n_paths, std::uint64_t seed, double eps, double amplitude) {
    if (k < 10) throw DomainError("perturbation_check needs at least 10 perturbations");
    problem.validate();
    const KernelTable table = build_table(grid, problem.market.h);
    const MCEstimate base = mc_value(problem, table, n_paths, seed);
    PerturbationReport r;
    r.base_value = base.mean;
    r.base_se = base.std_error;
    for (std::size_t m = 0; m < k; ++m) {
        const Perturbation p = random_perturbation(grid, problem.info, amplitude, seed, m);
        const MCEstimate d = perturbation_deficit(problem, table, p, eps, n_paths, seed);
        r.deficit.push_back(d.mean);
        r.deficit_se.push_back(d.std_error);
        if (d.mean < -3.0 * d.std_error) r.optimal = false;
    }
    return r;
}

}  // namespace liquifbm
