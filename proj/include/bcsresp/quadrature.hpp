#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bcsresp/types.hpp"

namespace bcsresp {

// 15-point Gauss-Legendre on [-1,1]
struct GaussLegendre15 {
    static constexpr int n = 15;
    static constexpr double x[n] = {
        -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
        -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
        -0.2011940939974345,  0.0,                 0.2011940939974345,
         0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
         0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
    static constexpr double w[n] = {
        0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
        0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
        0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
        0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
        0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
};

template <typename V, typename F>
V gl15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V acc = f(c + h * GaussLegendre15::x[0]) * (h * GaussLegendre15::w[0]);
    for (int i = 1; i < GaussLegendre15::n; ++i)
        acc = acc + f(c + h * GaussLegendre15::x[i]) * (h * GaussLegendre15::w[i]);
    return acc;
}

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 32;
    std::size_t max_panels = 200000;
};

namespace detail {

template <typename F, typename V, typename NormFn>
void adapt_panel(const F& f, double a, double b, const V& whole, double scale,
                 const QuadOptions& opt, const NormFn& vnorm, int depth, V& out,
                 std::size_t& panels) {
    const double mid = 0.5 * (a + b);
    const V left = gl15<V>(f, a, mid);
    const V right = gl15<V>(f, mid, b);
    const V sum = left + right;
    const double err = vnorm(sum - whole);
    if (depth > 0 &&
        err > opt.abs_tol + opt.rel_tol * std::max(scale, vnorm(sum))) {
        if (++panels > opt.max_panels)
            throw NonConvergedQuadrature("adaptive quadrature panel budget exhausted");
        adapt_panel(f, a, mid, left, scale, opt, vnorm, depth - 1, out, panels);
        adapt_panel(f, mid, b, right, scale, opt, vnorm, depth - 1, out, panels);
    } else {
        out = out + sum;
    }
}

}  // namespace detail

// adaptive GL15 with forced panel boundaries; V must support +, -, * double.
// vnorm(V) -> double supplies the error norm (max-abs across components).
template <typename V, typename F, typename NormFn>
V integrate_adaptive(const F& f, double a, double b,
                     std::vector<double> breakpoints, const QuadOptions& opt,
                     const NormFn& vnorm) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges;
    for (double x : breakpoints)
        if (x >= a && x <= b && (edges.empty() || x > edges.back() + 0.0))
            edges.push_back(x);
    // rough scale from the single-panel estimates
    V total = gl15<V>(f, edges[0], edges[1]);
    for (std::size_t i = 1; i + 1 < edges.size(); ++i)
        total = total + gl15<V>(f, edges[i], edges[i + 1]);
    const double scale = vnorm(total);

    V out = f(0.5 * (a + b)) * 0.0;
    std::size_t panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        const V whole = gl15<V>(f, edges[i], edges[i + 1]);
        detail::adapt_panel(f, edges[i], edges[i + 1], whole, scale, opt, vnorm,
                            opt.max_depth, out, panels);
    }
    return out;
}

inline double cnorm(const cplx& z) { return std::abs(z); }

template <typename F>
cplx integrate_c(const F& f, double a, double b, std::vector<double> bp,
                 const QuadOptions& opt) {
    return integrate_adaptive<cplx>(f, a, b, std::move(bp), opt, cnorm);
}

template <typename F>
double integrate_r(const F& f, double a, double b, std::vector<double> bp,
                   const QuadOptions& opt) {
    return integrate_adaptive<double>(f, a, b, std::move(bp), opt,
                                      [](double x) { return std::abs(x); });
}

}  // namespace bcsresp
