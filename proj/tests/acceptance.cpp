// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "liquifbm/cli.hpp"
#include "liquifbm/kernel.hpp"
#include "liquifbm/montecarlo.hpp"
#include "liquifbm/oracle.hpp"
#include "liquifbm/strategies.hpp"
#include "liquifbm/valuation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace liquifbm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

LiquidationProblem unit_problem(double h, InformationFlow info) {
    LiquidationProblem p;
    p.market = {0.0, 0.0, 1.0, h};
    p.info = info;
    return p;
}

std::vector<double> hurst_grid(double lo, double step, int count) {
    std::vector<double> v;
    for (int k = 0; k < count; ++k) v.push_back(std::round((lo + step * k) * 1e12) / 1e12);
    return v;
}

Outcome a1() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double h : hurst_grid(0.1, 0.1, 9))
        for (double t : {0.25, 1.0, 5.0})
            worst = std::max(worst, std::abs(kernel_energy(h, t) - std::pow(t, 2 * h)) / std::pow(t, 2 * h));
    const double secs = seconds_since(t0);
    return {worst <= 1e-4 && secs < 10.0, fmt("max rel err %.2e, %.2fs", worst, secs)};
}

Outcome a2() {
    double worst = 0.0;
    for (double T : {1.0, 5.0}) {
        worst = std::max(worst, std::abs(normalized_value(0.5, T, InformationFlow::standard())));
        for (double f : {0.1, 0.5})
            worst = std::max(worst, std::abs(normalized_value(0.5, T, InformationFlow::delayed(f * T))));
    }
    bool constant = true;
    const KernelTable table = build_table(TimeGrid(5.0, 100), 0.5);
    for (auto info : {InformationFlow::standard(), InformationFlow::delayed(0.5), InformationFlow::delayed(2.5)}) {
        LiquidationProblem p = unit_problem(0.5, info);
        p.phi0 = 2.0;
        p.T = 5.0;
        const MartingaleRepr r = martingale_repr(table, info);
        for (std::uint64_t k = 0; k < 20; ++k)
            for (double v : generic_strategy(p, table, r, simulate_path_pair(table, {42, k})).phi)
                constant = constant && v == -0.4;
    }
    return {worst <= 1e-6 && constant,
            fmt("max |value| %.2e, constant rate bit-exact: ", worst) + (constant ? "yes" : "no")};
}

Outcome a3() {
    const double v1 = normalized_value(0.5, 1.0, InformationFlow::insider(1.0));
    const double v2 = normalized_value(0.5, 1.0, InformationFlow::insider(0.5));
    const bool ok = std::abs(v1 - 1.0 / 6.0) <= 1e-6 && std::abs(v2 - 0.160046) <= 1e-5;
    return {ok, fmt("insider(1) %.9f, insider(0.5) %.9f", v1, v2)};
}

Outcome a4() {
    double worst = -1.0;  // largest violation
    for (double h : hurst_grid(0.1, 0.1, 9)) {
        const double s = normalized_value(h, 1.0, InformationFlow::standard());
        const double d = normalized_value(h, 1.0, InformationFlow::delayed(0.1));
        const double i = normalized_value(h, 1.0, InformationFlow::insider(0.1));
        worst = std::max({worst, d - s, s - i});
    }
    return {worst <= 1e-8, fmt("largest violation %.2e (slack 1e-8)", worst)};
}

Outcome a5() {
    std::vector<double> v;
    for (double h : hurst_grid(0.05, 0.05, 9)) v.push_back(normalized_value(h, 1.0, InformationFlow::delayed(0.1)));
    bool up = false, down = false;
    std::size_t peak = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        up |= v[k] > v[k - 1];
        down |= v[k] < v[k - 1];
        if (v[k] > v[peak]) peak = k;
    }
    return {up && down, fmt("delayed value peaks at h=%.2f (%.6f)", 0.05 * (peak + 1), v[peak])};
}

Outcome a6() {
    const auto t0 = Clock::now();
    struct Case {
        double h;
        InformationFlow info;
        const char* name;
    };
    const Case cases[] = {{0.3, InformationFlow::standard(), "0.3/std"},
                          {0.7, InformationFlow::standard(), "0.7/std"},
                          {0.7, InformationFlow::insider(0.5), "0.7/ins"},
                          {0.3, InformationFlow::delayed(0.5), "0.3/del"}};
    Outcome o;
    for (const auto& c : cases) {
        const LiquidationProblem p = unit_problem(c.h, c.info);
        const MCEstimate e = mc_value(p, TimeGrid(1.0, 256), 20000, 42);
        const double cf = general_value(p).total;
        const double gap = std::abs(e.mean - cf);
        const bool ok = gap <= std::max(3.0 * e.std_error, 0.02 * std::abs(cf));
        o.pass = o.pass && ok;
        o.detail += std::string(c.name) + fmt(" %+.2f%% (%.1f SE)", 100 * (e.mean - cf) / cf, gap / e.std_error) +
                    (ok ? "; " : " <- outside; ");
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 120.0;
    o.detail += fmt("%.1fs", secs);
    return o;
}

Outcome a7a() {
    Outcome o;
    struct Case {
        double h;
        InformationFlow info;
        const char* name;
    };
    for (const Case& c : {Case{0.7, InformationFlow::standard(), "0.7/std"},
                          Case{0.3, InformationFlow::delayed(0.25), "0.3/del0.25"}}) {
        const Step1Report r = step1_identity_check(c.h, 1.0, c.info, TimeGrid(1.0, 256), 20000, 42);
        const bool ok = std::abs(r.z_diff) <= 3.0 && std::abs(r.z_lhs) <= 3.0 && std::abs(r.z_rhs) <= 3.0;
        o.pass = o.pass && ok;
        o.detail += std::string(c.name) + fmt(" z(lhs-rhs) %.2f, z(lhs-cf) %.2f, z(rhs-cf) %.2f; ", r.z_diff, r.z_lhs,
                                              r.z_rhs);
    }
    return o;
}

Outcome a7b() {
    LiquidationProblem p;
    p.phi0 = 1.0;
    p.lambda = 2.0;
    p.T = 1.0;
    p.market = {0.0, 0.5, 1.5, 0.7};
    const MCEstimate e = mc_value(p, TimeGrid(1.0, 256), 20000, 42);
    const double cf = general_value(p).total;
    const double gap = std::abs(e.mean - cf);
    return {gap <= std::max(3.0 * e.std_error, 0.02 * std::abs(cf)),
            fmt("closed form %.6f, MC %.6f +- %.6f", cf, e.mean, e.std_error)};
}

Outcome a8() {
    Outcome o;
    // Riccati closed form
    double riccati = 0.0;
    for (std::size_t n : {4u, 16u, 64u}) {
        LiquidationProblem p = unit_problem(0.7, InformationFlow::standard());
        p.lambda = 1.7;
        const DPRecursion r = dp_solve(p, n);
        for (std::size_t i = 0; i < n; ++i)
            riccati = std::max(riccati, std::abs(r.a[i] * static_cast<double>(n - i) * r.dt() - p.lambda) / p.lambda);
    }
    // martingale anchor
    LiquidationProblem m = unit_problem(0.5, InformationFlow::standard());
    m.phi0 = 2.0;
    m.T = 5.0;
    double anchor = 0.0;
    for (std::size_t n : {1u, 8u, 64u}) anchor = std::max(anchor, std::abs(dp_value(m, n) + 0.4));
    // convergence
    const LiquidationProblem s = unit_problem(0.7, InformationFlow::standard());
    const double cf = general_value(s).total;
    const double e8 = std::abs(dp_value(s, 8) - cf) / cf;
    const double e64 = std::abs(dp_value(s, 64) - cf) / cf;
    // dominance over the strategy on the simulator's own law
    bool dominates = true;
    const TimeGrid g(1.0, 64);
    for (double h : {0.3, 0.7}) {
        const KernelTable t = build_table(g, h);
        for (auto info : {InformationFlow::standard(), InformationFlow::delayed(0.25), InformationFlow::insider(0.25)}) {
            const LiquidationProblem p = unit_problem(h, info);
            const double dp = dp_value(p, GaussianPriceLaw::from_table(p.market, t));
            const MCEstimate mc = mc_value(p, t, 10000, 42);
            dominates = dominates && dp >= mc.mean - 3.0 * mc.std_error;
        }
    }
    o.pass = riccati <= 1e-12 && anchor <= 1e-12 && e64 < 0.05 && e64 < e8 && dominates;
    o.detail = fmt("riccati %.1e, anchor %.1e, rel err n=8 %.3f%% n=64 %.3f%%, ", riccati, anchor, 100 * e8,
                   100 * e64) +
               "dominance " + (dominates ? "ok" : "violated");
    return o;
}

Outcome a9() {
    const LiquidationProblem p = unit_problem(0.7, InformationFlow::standard());
    const TimeGrid g(1.0, 32);
    const KernelTable t = build_table(g, 0.7);
    const double eps[3] = {0.1, 0.2, 0.4};
    double lo = 1e9, hi = -1e9;
    bool positive = true;
    for (std::uint64_t m = 0; m < 10; ++m) {
        const Perturbation pert = random_perturbation(g, p.info, 1.0, 42, m);
        double lx[3], ly[3];
        for (int k = 0; k < 3; ++k) {
            const double d = perturbation_deficit(p, t, pert, eps[k], 5000, 42).mean;
            positive = positive && d > 0.0;
            lx[k] = std::log(eps[k]);
            ly[k] = std::log(std::max(d, 1e-300));
        }
        const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
        double sxy = 0.0, sxx = 0.0;
        for (int k = 0; k < 3; ++k) {
            sxy += (lx[k] - mx) * (ly[k] - my);
            sxx += (lx[k] - mx) * (lx[k] - mx);
        }
        const double slope = sxy / sxx;
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
    }
    return {positive && lo >= 1.8 && hi <= 2.2, fmt("fitted exponents over 10 perturbations in [%.4f, %.4f]", lo, hi)};
}

std::string capture(const std::vector<std::string>& args, const char* threads, int& rc) {
    setenv("LIQUIFBM_THREADS", threads, 1);
    std::ostringstream out, err;
    rc = run_cli(args, out, err);
    unsetenv("LIQUIFBM_THREADS");
    return out.str();
}

Outcome a10() {
    const std::vector<std::vector<std::string>> cmds{
        {"sweep"}, {"path"}, {"mc", "--h", "0.3", "--info", "delayed", "--delta", "0.25", "--n", "128", "--paths", "4000"}};
    Outcome o;
    for (const auto& c : cmds) {
        int r1 = 0, r2 = 0, r3 = 0;
        const std::string a = capture(c, "1", r1), b = capture(c, "4", r2), again = capture(c, "4", r3);
        const bool same = !a.empty() && a == b && b == again && r1 == 0 && r2 == 0 && r3 == 0;
        o.pass = o.pass && same;
        o.detail += c[0] + (same ? " identical; " : " DIFFERS; ");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"A1", a1}, {"A2", a2}, {"A3", a3},   {"A4", a4},   {"A5", a5}, {"A6", a6},
        {"A7a", a7a}, {"A7b", a7b}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%-4s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
