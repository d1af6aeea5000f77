#include "liquifbm/fbm.hpp"

#include "stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace liquifbm;

TEST(AnalyticCov, BrownianIsMinimum) { EXPECT_EQ(analytic_cov(0.5, 1.0, 2.0), 1.0); }

TEST(AnalyticCov, DiagonalIsPower) {
    for (double h : {0.1, 0.3, 0.7, 0.9})
        for (double t : {0.2, 1.0, 3.0}) EXPECT_DOUBLE_EQ(analytic_cov(h, t, t), std::pow(t, 2 * h));
}

TEST(AnalyticCov, MatchesDirectFormulaAndIsSymmetric) {
    const double direct = 0.5 * (1.0 + std::pow(0.5, 1.4) - std::pow(0.5, 1.4));
    EXPECT_NEAR(analytic_cov(0.7, 1.0, 0.5), direct, 1e-14);
    EXPECT_EQ(analytic_cov(0.3, 0.4, 1.7), analytic_cov(0.3, 1.7, 0.4));
}

TEST(AnalyticCov, SelfSimilar) {
    for (double h : {0.2, 0.7})
        EXPECT_NEAR(analytic_cov(h, 3.0 * 0.4, 3.0 * 0.9), std::pow(3.0, 2 * h) * analytic_cov(h, 0.4, 0.9), 1e-13);
}

TEST(AnalyticCov, RejectsNegativeTimes) { EXPECT_THROW(analytic_cov(0.7, -1.0, 1.0), DomainError); }

TEST(Rng, KolmogorovSeriesKnownValues) {
    EXPECT_NEAR(stats::kolmogorov_q(1.3581), 0.05, 1e-4);
    EXPECT_NEAR(stats::kolmogorov_q(1.6276), 0.01, 1e-4);
}

TEST(Simulate, BrownianPathIsCumulativeSum) {
    const KernelTable t = build_table(TimeGrid(1.0, 32), 0.5);
    const PathPair p = simulate_path_pair(t, {7, 3});
    double s = 0.0;
    for (std::size_t i = 1; i <= 32; ++i) {
        s += p.dw[i - 1];
        EXPECT_EQ(p.bh[i], s);
    }
}

TEST(Simulate, ConstructionIdentityHoldsExactly) {
    const KernelTable t = build_table(TimeGrid(1.0, 64), 0.3);
    const PathPair p = simulate_path_pair(t, {42, 11});
    EXPECT_EQ(p.bh[0], 0.0);
    EXPECT_EQ(p.bh, fbm_from_increments(t, p.dw));
    for (double v : p.dw) EXPECT_TRUE(std::isfinite(v));
}

TEST(Simulate, IsDeterministic) {
    const KernelTable t = build_table(TimeGrid(1.0, 64), 0.7);
    const PathPair a = simulate_path_pair(t, {42, 5});
    const PathPair b = simulate_path_pair(t, {42, 5});
    EXPECT_EQ(a.dw, b.dw);
    EXPECT_EQ(a.bh, b.bh);
    const PathPair c = simulate_path_pair(t, {43, 5});
    EXPECT_NE(a.dw, c.dw);
}

TEST(Simulate, SampleCovarianceMatchesAnalytic) {
    const TimeGrid g(1.0, 128);
    const KernelTable t = build_table(g, 0.3);
    const std::size_t paths = 20000;
    std::vector<double> x(paths), y(paths);
    for (std::size_t p = 0; p < paths; ++p) {
        const PathPair pp = simulate_path_pair(t, {42, p});
        x[p] = pp.bh[64];
        y[p] = pp.bh[128];
    }
    const auto c = stats::covariance(x, y);
    const double target = analytic_cov(0.3, 0.5, 1.0);
    EXPECT_LE(std::abs(c.mean - target), 4.0 * c.se + 0.02 * std::abs(target)) << c.mean << " vs " << target;
}

TEST(Simulate, MeanIsZeroAndVarianceScales) {
    const std::size_t paths = 10000;
    const KernelTable t1 = build_table(TimeGrid(1.0, 64), 0.7);
    const KernelTable t3 = build_table(TimeGrid(3.0, 64), 0.7);
    std::vector<double> a(paths), b(paths), a2(paths), b2(paths);
    for (std::size_t p = 0; p < paths; ++p) {
        a[p] = simulate_path_pair(t1, {1, p}).bh[64];
        b[p] = simulate_path_pair(t3, {2, p}).bh[64];
        a2[p] = a[p] * a[p];
        b2[p] = b[p] * b[p];
    }
    const auto ma = stats::mean_se(a), mb = stats::mean_se(b);
    EXPECT_LE(std::abs(ma.mean), 4.0 * ma.se);
    EXPECT_LE(std::abs(mb.mean), 4.0 * mb.se);
    // var at 3 equals 3^{2H} var at 1
    const auto va = stats::mean_se(a2), vb = stats::mean_se(b2);
    const double k = std::pow(3.0, 1.4);
    const double se = std::sqrt(k * k * va.se * va.se + vb.se * vb.se);
    EXPECT_LE(std::abs(vb.mean - k * va.mean), 4.0 * se);
}

TEST(Simulate, DistinctPathsAreUncorrelated) {
    const KernelTable t = build_table(TimeGrid(1.0, 64), 0.7);
    std::vector<double> prod;
    for (std::size_t p = 0; p < 2000; ++p) {
        const PathPair a = simulate_path_pair(t, {42, 2 * p});
        const PathPair b = simulate_path_pair(t, {42, 2 * p + 1});
        for (std::size_t j = 0; j < 64; ++j) prod.push_back(a.dw[j] * b.dw[j] * 64.0);
    }
    const auto r = stats::mean_se(prod);
    EXPECT_LE(std::abs(r.mean), 4.0 * r.se);
}

TEST(Cholesky, CovarianceMatrixIsAnalyticEntrywise) {
    const TimeGrid g(1.0, 4);
    const Eigen::MatrixXd C = fbm_covariance(0.7, g);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double t = (i + 1) * 0.25, u = (k + 1) * 0.25;
            const double direct = 0.5 * (std::pow(t, 1.4) + std::pow(u, 1.4) - std::pow(std::abs(t - u), 1.4));
            EXPECT_NEAR(C(i, k), direct, 1e-14);
        }
    const Eigen::MatrixXd L = cholesky_lower(C);
    EXPECT_LT((L * L.transpose() - C).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Cholesky, ReportsOffendingMinor) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    m(2, 1) = m(1, 2) = 1.0;  // rows 2 and 3 coincide
    try {
        cholesky_lower(m);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("leading minor 3"), std::string::npos) << e.what();
    }
}

TEST(Cholesky, BrownianIncrementsAreIid) {
    const TimeGrid g(1.0, 16);
    const CholeskySampler s(0.5, g);
    EXPECT_LT((s.factor() - Eigen::MatrixXd::Constant(16, 16, 0.25).triangularView<Eigen::Lower>().toDenseMatrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
    std::vector<double> inc, lag;
    for (std::size_t p = 0; p < 5000; ++p) {
        const auto b = s.sample({9, p});
        for (std::size_t i = 1; i <= 16; ++i) inc.push_back((b[i] - b[i - 1]) / 0.25);
        for (std::size_t i = 2; i <= 16; ++i) lag.push_back((b[i] - b[i - 1]) * (b[i - 1] - b[i - 2]) * 16.0);
    }
    const auto m = stats::mean_se(inc);
    EXPECT_LE(std::abs(m.mean), 4.0 * m.se);
    std::vector<double> sq;
    for (double v : inc) sq.push_back(v * v);
    const auto v = stats::mean_se(sq);
    EXPECT_LE(std::abs(v.mean - 1.0), 4.0 * v.se);
    const auto l = stats::mean_se(lag);
    EXPECT_LE(std::abs(l.mean), 4.0 * l.se);
}

TEST(Cholesky, TerminalMarginalAgreesWithVolterraSampler) {
    const TimeGrid g(1.0, 64);
    const KernelTable t = build_table(g, 0.7);
    const CholeskySampler s(0.7, g);
    std::vector<double> a, b;
    for (std::size_t p = 0; p < 5000; ++p) {
        a.push_back(s.sample({42, p})[64]);
        b.push_back(simulate_path_pair(t, {42, p}).bh[64]);
    }
    const auto ks = stats::ks_two_sample(a, b);
    EXPECT_GT(ks.p, 0.01) << "D=" << ks.d;
}

TEST(Cholesky, RejectsOversizedGrid) {
    EXPECT_THROW(CholeskySampler(0.7, TimeGrid(1.0, CholeskySampler::kMaxSteps + 1)), DomainError);
}

TEST(PathCsv, HeaderAndRows) {
    const KernelTable t = build_table(TimeGrid(1.0, 4), 0.7);
    std::ostringstream os;
    write_path_csv(os, simulate_path_pair(t, {42, 0}));
    const std::string s = os.str();
    EXPECT_EQ(s.substr(0, 8), "t,w,bh\n0");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 6);
}
