#include "liquifbm/kernel.hpp"

#include "liquifbm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace liquifbm {

namespace {

constexpr std::size_t kPanelNodes = 12;
constexpr std::size_t kEndNodes = 16;
constexpr std::size_t kFitNodes = 28;

struct Profile {
    double H, a, c, D;
};

Profile make_profile(double h) {
    const double c = c_h(h);
    const double D = c * std::tgamma(h + 0.5) * std::tgamma(2.0 - 2.0 * h) /
                     (2.0 * std::tgamma(1.5 - h));
    return {h, h - 0.5, c, D};
}

// rR: weight v^{1-2H}, rJ: weight v^{a}, both on [0,1]
struct DirectRules {
    quad::Rule rR, rJ;
    DirectRules(double h, std::size_t m)
        : rR(quad::jacobi_unit(m, 1.0 - 2.0 * h)), rJ(quad::jacobi_unit(m, h - 0.5)) {}
};

// g1(x) = c [ (1-x)^a - 1/2 + a R(x) ],  R(x) = int_0^1 v^{-2H} ((1-xv)^a - 1) dv
double g1_from(const Profile& p, const quad::Rule& rR, double x) {
    double R = 0.0;
    for (std::size_t k = 0; k < rR.x.size(); ++k) {
        const double v = rR.x[k];
        R += rR.w[k] * std::expm1(p.a * std::log1p(-x * v)) / v;
    }
    return p.c * (std::pow(1.0 - x, p.a) - 0.5 + p.a * R);
}

// g2(x) = c [ x^{-a} - a x^a w Jt(w) ],  w = 1-x,  Jt(w) = int_0^1 v^a (1-wv)^{-2H} dv
double g2_from(const Profile& p, const quad::Rule& rJ, double x) {
    const double w = 1.0 - x;
    double J = 0.0;
    for (std::size_t k = 0; k < rJ.x.size(); ++k)
        J += rJ.w[k] * std::pow(1.0 - w * rJ.x[k], -2.0 * p.H);
    return p.c * (std::pow(x, -p.a) - p.a * std::pow(x, p.a) * w * J);
}

double zeta_from(const Profile& p, const DirectRules& r, double x) {
    if (x <= 0.5) return std::pow(x, -p.a) * g1_from(p, r.rR, x) + p.D * std::pow(x, p.a);
    return std::pow(1.0 - x, p.a) * g2_from(p, r.rJ, x);
}

template <std::size_t N>
void cheb_fit(std::array<double, N>& c, double lo, double hi, auto&& f) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::array<double, N> fv{};
    for (std::size_t k = 0; k < N; ++k)
        fv[k] = f(mid + half * std::cos(std::numbers::pi * (k + 0.5) / N));
    for (std::size_t j = 0; j < N; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < N; ++k)
            s += fv[k] * std::cos(std::numbers::pi * j * (k + 0.5) / N);
        c[j] = 2.0 * s / N;
    }
}

template <std::size_t N>
double cheb_eval(const std::array<double, N>& c, double lo, double hi, double x) {
    const double y = (2.0 * x - lo - hi) / (hi - lo);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = N - 1; j >= 1; --j) {
        const double b0 = 2.0 * y * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + 0.5 * c[0];
}

void unpack(const quad::Rule& r, std::vector<double>& x, std::vector<double>& w) {
    x = r.x;
    w = r.w;
}

}  // namespace

double c_h(double h) {
    check_hurst(h);
    if (h == 0.5) return 1.0;
    const double v = 2.0 * h * std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2.0 - 2.0 * h));
    return std::sqrt(v);
}

MolchanGolosov::MolchanGolosov(double h) : h_(check_hurst(h)), a_(h - 0.5), brownian_(h == 0.5) {
    const Profile p = make_profile(h);
    c_ = p.c;
    d_ = p.D;
    unpack(quad::legendre_unit(kPanelNodes), gx_, gw_);
    if (brownian_) return;
    unpack(quad::jacobi_unit(kEndNodes, -a_), l1x_, l1w_);
    unpack(quad::jacobi_unit(kEndNodes, -2.0 * a_), l2x_, l2w_);
    unpack(quad::jacobi_unit(kEndNodes, a_), r1x_, r1w_);
    unpack(quad::jacobi_unit(kEndNodes, 2.0 * a_), r2x_, r2w_);

    const DirectRules dr(h, kFitNodes);
    cheb_fit(cheb1_, 0.0, 0.5, [&](double x) { return g1_from(p, dr.rR, x); });
    cheb_fit(cheb2_, 0.5, 1.0, [&](double x) { return g2_from(p, dr.rJ, x); });
    for (double v : cheb1_)
        if (!std::isfinite(v)) throw NumericalError("kernel profile fit is not finite, h=" + std::to_string(h));
    for (double v : cheb2_)
        if (!std::isfinite(v)) throw NumericalError("kernel profile fit is not finite, h=" + std::to_string(h));
}

double MolchanGolosov::g1(double x) const { return cheb_eval(cheb1_, 0.0, 0.5, x); }
double MolchanGolosov::g2(double x) const { return cheb_eval(cheb2_, 0.5, 1.0, x); }

double MolchanGolosov::g1_direct(double x, std::size_t nodes) const {
    const Profile p{h_, a_, c_, d_};
    return g1_from(p, quad::jacobi_unit(nodes, 1.0 - 2.0 * h_), x);
}

double MolchanGolosov::g2_direct(double x, std::size_t nodes) const {
    const Profile p{h_, a_, c_, d_};
    return g2_from(p, quad::jacobi_unit(nodes, a_), x);
}

double MolchanGolosov::zeta(double x) const {
    if (brownian_) return 1.0;
    if (x <= 0.5) {
        const double e = std::exp(-a_ * std::log(x));
        return e * g1(x) + d_ / e;
    }
    return std::pow(1.0 - x, a_) * g2(x);
}

double MolchanGolosov::zeta_direct(double x, std::size_t nodes) const {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("zeta: argument must lie in (0,1)");
    if (brownian_) return 1.0;
    if (x <= 0.5) return std::pow(x, -a_) * g1_direct(x, nodes) + d_ * std::pow(x, a_);
    return std::pow(1.0 - x, a_) * g2_direct(x, nodes);
}

double MolchanGolosov::z(double t, double s) const {
    if (!(s > 0.0 && s < t)) throw DomainError("z_kernel requires 0 < s < t");
    if (brownian_) return 1.0;
    return std::pow(t, a_) * zeta(s / t);
}

template <class F>
double MolchanGolosov::mid_panels(F&& f, double l, double r) const {
    const double len = r - l;
    const double dist = std::min(l, 1.0 - r);
    if (len <= dist || len < 1e-14) {
        double s = 0.0;
        for (std::size_t k = 0; k < gx_.size(); ++k) s += gw_[k] * f(l + len * gx_[k]);
        return s * len;
    }
    const double m = 0.5 * (l + r);
    return mid_panels(f, l, m) + mid_panels(f, m, r);
}

namespace {
void check_range(double a, double b) {
    if (!(a >= 0.0 && b <= 1.0 && a <= b)) throw DomainError("profile integral needs 0 <= a <= b <= 1");
}
}  // namespace

double MolchanGolosov::int_zeta(double a, double b) const {
    check_range(a, b);
    if (a == b) return 0.0;
    if (brownian_) return b - a;
    auto f = [this](double x) { return zeta(x); };
    double s = 0.0;
    if (a < 0.5) {
        const double r = std::min(b, 0.5);
        if (a == 0.0) {
            double q = 0.0;
            for (std::size_t k = 0; k < l1x_.size(); ++k) q += l1w_[k] * g1(r * l1x_[k]);
            s += std::pow(r, 1.0 - a_) * q + d_ * std::pow(r, 1.0 + a_) / (1.0 + a_);
        } else {
            s += mid_panels(f, a, r);
        }
    }
    if (b > 0.5) {
        const double l = std::max(a, 0.5);
        if (b == 1.0) {
            const double W = 1.0 - l;
            double q = 0.0;
            for (std::size_t k = 0; k < r1x_.size(); ++k) q += r1w_[k] * g2(1.0 - W * r1x_[k]);
            s += std::pow(W, 1.0 + a_) * q;
        } else {
            s += mid_panels(f, l, b);
        }
    }
    return s;
}

double MolchanGolosov::int_zeta_sq(double a, double b) const {
    check_range(a, b);
    if (a == b) return 0.0;
    if (brownian_) return b - a;
    auto f = [this](double x) {
        const double z = zeta(x);
        return z * z;
    };
    double s = 0.0;
    if (a < 0.5) {
        const double r = std::min(b, 0.5);
        if (a == 0.0) {
            // zeta^2 = x^{-2a} g1^2 + 2 D g1 + D^2 x^{2a}
            double q = 0.0, lin = 0.0;
            for (std::size_t k = 0; k < l2x_.size(); ++k) {
                const double g = g1(r * l2x_[k]);
                q += l2w_[k] * g * g;
            }
            for (std::size_t k = 0; k < gx_.size(); ++k) lin += gw_[k] * g1(r * gx_[k]);
            s += std::pow(r, 1.0 - 2.0 * a_) * q + 2.0 * d_ * r * lin +
                 d_ * d_ * std::pow(r, 1.0 + 2.0 * a_) / (1.0 + 2.0 * a_);
        } else {
            s += mid_panels(f, a, r);
        }
    }
    if (b > 0.5) {
        const double l = std::max(a, 0.5);
        if (b == 1.0) {
            const double W = 1.0 - l;
            double q = 0.0;
            for (std::size_t k = 0; k < r2x_.size(); ++k) {
                const double g = g2(1.0 - W * r2x_[k]);
                q += r2w_[k] * g * g;
            }
            s += std::pow(W, 1.0 + 2.0 * a_) * q;
        } else {
            s += mid_panels(f, l, b);
        }
    }
    return s;
}

double MolchanGolosov::int_horizon(double a, double b) const {
    check_range(a, b);
    if (!(a > 0.0)) throw DomainError("horizon integral needs a > 0");
    if (a == b) return 0.0;
    if (brownian_) return 1.0 / a - 1.0 / b;
    auto f = [this](double x) { return std::pow(x, -2.0 - a_) * zeta(x); };
    double s = 0.0;
    if (a < 0.5) s += mid_panels(f, a, std::min(b, 0.5));
    if (b > 0.5) {
        const double l = std::max(a, 0.5);
        if (b == 1.0) {
            const double W = 1.0 - l;
            double q = 0.0;
            for (std::size_t k = 0; k < r1x_.size(); ++k) {
                const double x = 1.0 - W * r1x_[k];
                q += r1w_[k] * std::pow(x, -2.0 - a_) * g2(x);
            }
            s += std::pow(W, 1.0 + a_) * q;
        } else {
            s += mid_panels(f, l, b);
        }
    }
    return s;
}

double MolchanGolosov::k(double s, double lo, double hi) const {
    if (!(s > 0.0 && s <= lo && lo <= hi)) throw DomainError("k: need 0 < s <= lo <= hi");
    if (lo == hi) return 0.0;
    if (brownian_) return hi - lo;
    return std::pow(s, 1.0 + a_) * int_horizon(s / hi, s / lo);
}

double MolchanGolosov::cell_average(double t, double s0, double len) const {
    if (!(s0 >= 0.0 && len > 0.0 && s0 + len <= t * (1.0 + 1e-14)))
        throw DomainError("cell_average: cell must lie inside (0,t)");
    if (brownian_) return 1.0;
    const double hi = std::min(1.0, (s0 + len) / t);
    return std::pow(t, a_) * (t / len) * int_zeta(s0 / t, hi);
}

double z_kernel(double h, double t, double s) {
    check_hurst(h);
    if (!(s > 0.0 && s < t)) throw DomainError("z_kernel requires 0 < s < t");
    if (h == 0.5) return 1.0;
    return z_kernel_checked(h, t, s).value;
}

KernelEval z_kernel_checked(double h, double t, double s, std::size_t nodes) {
    check_hurst(h);
    if (!(s > 0.0 && s < t)) throw DomainError("z_kernel requires 0 < s < t");
    if (nodes < 4) throw DomainError("z_kernel: need at least 4 nodes");
    if (h == 0.5) return {1.0, 0.0};
    const Profile p = make_profile(h);
    const double x = s / t, scale = std::pow(t, h - 0.5);
    const double fine = scale * zeta_from(p, DirectRules(h, nodes), x);
    const double coarse = scale * zeta_from(p, DirectRules(h, nodes / 2), x);
    if (!std::isfinite(fine))
        throw NumericalError("z_kernel: non-finite value at t=" + std::to_string(t) + " s=" + std::to_string(s));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(fine);
    return {fine, std::abs(fine - coarse) + floor};
}

double k_integral(double h, double s, double T) {
    check_hurst(h);
    if (!(s > 0.0 && s < T)) throw DomainError("k_integral requires 0 < s < T");
    if (h == 0.5) return T - s;
    return MolchanGolosov(h).k(s, s, T);
}

double kernel_energy(double h, double t) {
    check_hurst(h);
    if (!(t > 0.0)) throw DomainError("kernel_energy requires t > 0");
    return std::pow(t, 2.0 * h) * MolchanGolosov(h).int_zeta_sq(0.0, 1.0);
}

KernelTable build_table(const TimeGrid& grid, double h, DiagonalRule rule) {
    check_hurst(h);
    const std::size_t n = grid.n;
    const double dt = grid.dt();
    KernelTable tab;
    tab.grid = grid;
    tab.h = h;
    tab.rule = rule;
    tab.cells.assign(KernelTable::offset(n + 1), 1.0);
    tab.k_vals.resize(n);

    if (h == 0.5) {
        tab.k_vals[0] = grid.T - 0.5 * dt;
        for (std::size_t j = 1; j < n; ++j) tab.k_vals[j] = grid.T - grid.t(j);
        return tab;
    }

    const MolchanGolosov mg(h);
    const double a = h - 0.5;
    for (std::size_t i = 1; i <= n; ++i) {
        const double ti = grid.t(i);
        const double scale = std::pow(ti, a) * static_cast<double>(i);
        double* row = tab.cells.data() + KernelTable::offset(i);
        const double di = static_cast<double>(i);
        for (std::size_t j = 0; j < i; ++j) {
            const double hi = (j + 1 == i) ? 1.0 : static_cast<double>(j + 1) / di;
            row[j] = scale * mg.int_zeta(static_cast<double>(j) / di, hi);
        }
        if (rule == DiagonalRule::EnergyPreserving) {
            // for H > 1/2 the kernel blows up at s = 0 and is nearly separable there,
            // so the first cell carries its RMS; the plain average loses cross-covariance
            if (a > 0.0 && i > 1) row[0] = std::pow(ti, a) * std::sqrt(di * mg.int_zeta_sq(0.0, 1.0 / di));
            double rest = 0.0;
            for (std::size_t j = 0; j + 1 < i; ++j) rest += row[j] * row[j];
            const double d2 = (std::pow(ti, 2.0 * h) - dt * rest) / dt;
            if (!(d2 > 0.0))
                throw NumericalError("energy-preserving diagonal has no real solution at node " + std::to_string(i));
            row[i - 1] = std::sqrt(d2);
        }
        for (std::size_t j = 0; j < i; ++j)
            if (!std::isfinite(row[j]))
                throw NumericalError("kernel table entry not finite at node " + std::to_string(i) + ", cell " +
                                     std::to_string(j));
    }

    // (1/dt) int_0^dt K(s) ds = (1/dt) int_0^T int_0^{min(u,dt)} Z(u,s) ds du
    const double full = mg.int_zeta(0.0, 1.0);
    double first = full * std::pow(dt, a + 2.0) / (a + 2.0);
    if (n > 1) {
        first += quad::graded(
            [&](double u) { return std::pow(u, a + 1.0) * mg.int_zeta(0.0, std::min(1.0, dt / u)); }, dt,
            grid.T, 0.0, 0.0);
    }
    tab.k_vals[0] = first / dt;
    for (std::size_t j = 1; j < n; ++j) {
        const double s = grid.t(j);
        tab.k_vals[j] = mg.k(s, s, grid.T);
        if (!std::isfinite(tab.k_vals[j]))
            throw NumericalError("K(s) not finite at node " + std::to_string(j));
    }
    return tab;
}

}  // namespace liquifbm
