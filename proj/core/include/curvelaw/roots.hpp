#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace curvelaw {

/// Bisection on a sign-changing bracket until the width is below tol.
template <class G>
[[nodiscard]] double bisect(G&& g, double lo, double hi, double tol, int max_iter = 400) {
    double glo = g(lo);
    for (int it = 0; it < max_iter && std::abs(hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Grow [x/2^k, x*2^k] geometrically until g changes sign; positive arguments only.
template <class G>
[[nodiscard]] std::optional<std::pair<double, double>> doubling_bracket(G&& g, double x0 = 1.0,
                                                                        int max_doublings = 80) {
    double lo = x0, hi = x0;
    const double g0 = g(x0);
    if (g0 == 0.0) return std::pair{x0, x0};
    for (int k = 0; k < max_doublings; ++k) {
        const double nlo = lo * 0.5, nhi = hi * 2.0;
        if ((g(nlo) < 0.0) != (g0 < 0.0)) return std::pair{nlo, lo};
        if ((g(nhi) < 0.0) != (g0 < 0.0)) return std::pair{hi, nhi};
        lo = nlo;
        hi = nhi;
    }
    return std::nullopt;
}

/// Newton iteration kept inside a bracket, falling back to bisection.
template <class G, class DG>
[[nodiscard]] double safeguarded_newton(G&& g, DG&& dg, double lo, double hi, double rel_tol,
                                        int max_iter = 200) {
    double glo = g(lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double gx = g(x);
        if (gx == 0.0) return x;
        if ((gx < 0.0) == (glo < 0.0)) {
            lo = x;
            glo = gx;
        } else {
            hi = x;
        }
        const double d = dg(x);
        double next = (d != 0.0) ? x - gx / d : 0.5 * (lo + hi);
        if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= rel_tol * std::abs(x) || std::abs(hi - lo) <= rel_tol * std::abs(x)) break;
    }
    return x;
}

} // namespace curvelaw
