#pragma once

#include <cmath>
#include <functional>

namespace chq {

/// Adaptive Simpson quadrature on [a, b]. abs_tol guards against endless
/// refinement of negligible panels; depth caps recursion.
namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double rel_tol, double abs_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 ||
        std::abs(delta) <= 15.0 * (abs_tol + rel_tol * std::abs(left + right)))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, rel_tol, 0.5 * abs_tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, rel_tol, 0.5 * abs_tol, depth - 1);
}

} // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b,
                        double rel_tol = 1e-10, double abs_tol = 1e-14,
                        int max_depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol, abs_tol, max_depth);
}

/// Integral over [0, infinity) split at `split`; the tail is mapped through
/// r = split/t, t in (0, 1].
template <class F>
double integrate_halfline(const F& f, double split,
                          double rel_tol = 1e-10, double abs_tol = 1e-14) {
    const double head = adaptive_simpson(f, 0.0, split, rel_tol, abs_tol);
    auto tail = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double r = split / t;
        return f(r) * split / (t * t);
    };
    // r beyond split/1e-12 contributes nothing for the algebraically decaying
    // profiles integrated here
    const double rest = adaptive_simpson(tail, 1e-12, 1.0, rel_tol, abs_tol);
    return head + rest;
}

} // namespace chq
