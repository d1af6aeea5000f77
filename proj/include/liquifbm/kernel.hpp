#pragma once

#include "liquifbm/types.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace liquifbm {

// Normalizing constant of the Molchan-Golosov kernel.
double c_h(double h);

struct KernelEval {
    double value = 0.0;
    double error = 0.0;  // |difference to a half-size rule| plus a rounding floor
};

// Z_H(t,s) for 0 < s < t, evaluated by direct quadrature (no interpolation).
double z_kernel(double h, double t, double s);
KernelEval z_kernel_checked(double h, double t, double s, std::size_t nodes = 24);

// K(s) = int_s^T Z_H(u,s) du
double k_integral(double h, double s, double T);

// int_0^t Z_H(t,s)^2 ds, equal to t^{2H} for an exact kernel
double kernel_energy(double h, double t);

// Evaluator for one Hurst index.
//
// Z(t,s) = t^a zeta(s/t) with a = H - 1/2. The profile zeta is split as
//   zeta(x) = x^{-a} g1(x) + D x^a        on (0, 1/2]
//   zeta(x) = (1-x)^a g2(x)               on [1/2, 1)
// with g1, g2 analytic on their closed halves. g1 and g2 are tabulated as
// Chebyshev series once; the power factors are integrated with Gauss-Jacobi
// weights so endpoint singularities never reach a polynomial rule.
class MolchanGolosov {
public:
    explicit MolchanGolosov(double h);

    double h() const { return h_; }
    double alpha() const { return a_; }

    // Interpolated profile (fast path).
    double zeta(double x) const;
    // Profile from the incomplete-beta representation with `nodes` Jacobi nodes.
    double zeta_direct(double x, std::size_t nodes) const;

    double z(double t, double s) const;

    // int_a^b zeta, int_a^b zeta^2, int_a^b x^{-2-a} zeta; 0 <= a < b <= 1
    double int_zeta(double a, double b) const;
    double int_zeta_sq(double a, double b) const;
    double int_horizon(double a, double b) const;  // requires a > 0

    // int_lo^hi Z(u,s) du with s <= lo < hi
    double k(double s, double lo, double hi) const;

    // (1/len) int_{s0}^{s0+len} Z(t,s) ds for 0 <= s0 < s0 + len <= t
    double cell_average(double t, double s0, double len) const;

private:
    static constexpr std::size_t kCheb = 40;

    double h_, a_, c_, d_;
    bool brownian_;
    std::array<double, kCheb> cheb1_{}, cheb2_{};

    // unit rules: Legendre, and Jacobi weights x^{-a}, x^{-2a}, x^{a}, x^{2a}
    std::vector<double> gx_, gw_, l1x_, l1w_, l2x_, l2w_, r1x_, r1w_, r2x_, r2w_;

    double g1(double x) const;
    double g2(double x) const;
    double g1_direct(double x, std::size_t nodes) const;
    double g2_direct(double x, std::size_t nodes) const;

    template <class F>
    double mid_panels(F&& f, double l, double r) const;
};

enum class DiagonalRule {
    // last cell of each row set so that the row reproduces Var B_t = t^{2H};
    // for H > 1/2 the first cell holds the RMS of the kernel instead of its mean
    EnergyPreserving,
    // every cell is the plain cell average
    CellAverage
};

struct KernelTable {
    TimeGrid grid;
    double h = 0.5;
    DiagonalRule rule = DiagonalRule::EnergyPreserving;
    // rows i = 1..n, row i holds cells j = 0..i-1, stored contiguously
    std::vector<double> cells;
    std::vector<double> k_vals;  // size n: K(s_j), j = 0 is the (0,dt) cell average

    static std::size_t offset(std::size_t i) { return i * (i - 1) / 2; }
    std::span<const double> row(std::size_t i) const { return {cells.data() + offset(i), i}; }
    double z(std::size_t i, std::size_t j) const { return cells[offset(i) + j]; }
};

KernelTable build_table(const TimeGrid& grid, double h,
                        DiagonalRule rule = DiagonalRule::EnergyPreserving);

}  // namespace liquifbm
