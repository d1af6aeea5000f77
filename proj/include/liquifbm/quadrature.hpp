#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace liquifbm::quad {

// Nodes and weights of an interpolatory rule.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1,1], computed with
// the Golub-Welsch eigenvalue method. Requires a, b > -1.
Rule gauss_jacobi(std::size_t n, double a, double b);

// Gauss-Legendre on [-1,1].
Rule gauss_legendre(std::size_t n);

// Rule on [0,1] for the weight x^p: sum w_k f(x_k) ~ int_0^1 x^p f(x) dx.
Rule jacobi_unit(std::size_t n, double p);

// Legendre mapped to [0,1].
Rule legendre_unit(std::size_t n);

template <class F>
double apply(const Rule& r, F&& f) {
    double s = 0.0;
    for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * f(r.x[k]);
    return s;
}

// int_a^b f with a [0,1] rule
template <class F>
double apply_on(const Rule& unit, double a, double b, F&& f) {
    const double len = b - a;
    double s = 0.0;
    for (std::size_t k = 0; k < unit.x.size(); ++k) s += unit.w[k] * f(a + len * unit.x[k]);
    return s * len;
}

// int_a^b f for f that behaves like (x-a)^pl near a and (b-x)^pr near b
// (times something bounded). Geometric panels shrink toward both ends, the
// innermost panel on each side uses the matching Jacobi weight.
template <class F>
double graded(F&& f, double a, double b, double pl, double pr, std::size_t layers = 12,
              double ratio = 0.2, std::size_t nodes = 16) {
    if (!(b > a)) return 0.0;
    const Rule gl = legendre_unit(nodes);
    const Rule jl = jacobi_unit(nodes, pl);
    const Rule jr = jacobi_unit(nodes, pr);
    const double m = 0.5 * (a + b);
    const double half = m - a;

    double s = 0.0;
    double hi = half;  // distance from the end
    for (std::size_t k = 0; k < layers; ++k) {
        const double lo = hi * ratio;
        s += apply_on(gl, a + lo, a + hi, f);
        s += apply_on(gl, b - hi, b - lo, f);
        hi = lo;
    }
    const double eps = hi;
    double inner = 0.0;
    for (std::size_t k = 0; k < jl.x.size(); ++k)
        inner += jl.w[k] * std::pow(jl.x[k], -pl) * f(a + eps * jl.x[k]);
    for (std::size_t k = 0; k < jr.x.size(); ++k)
        inner += jr.w[k] * std::pow(jr.x[k], -pr) * f(b - eps * jr.x[k]);
    return s + eps * inner;
}

// Pairwise (cascade) summation; fixed association order for reproducibility.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace liquifbm::quad
