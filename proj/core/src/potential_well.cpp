#include "curvelaw/potential_well.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/roots.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace curvelaw {

namespace {

// Points within this relative distance of the minimum use slope quadrature for drops.
constexpr double kDropBand = 0.1;
// Points within this relative distance of the minimum use the Taylor series for ratios.
constexpr double kSeriesBand = 0.02;
// Relative distance to an endpoint below which the drop is expanded to second order.
constexpr double kEdgeSeries = 1e-8;
constexpr int kMaxTriplings = 9;

double drop_by_slope(const PotentialWell& w, double s, double u) {
    const auto& gl = gauss_legendre16();
    const double mid = 0.5 * (s + u), half = 0.5 * (s - u);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * w.slope(mid + half * gl.nodes[i]);
    return acc * half;
}

// Integral of V' over [a, a + gap]; accurate for gaps far below the resolution of a.
double slope_over_gap(const PotentialWell& w, double a, double gap) {
    const auto& gl = gauss_legendre16();
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * w.slope(a + 0.5 * gap * (1.0 + gl.nodes[i]));
    return 0.5 * gap * acc;
}

// A(x) = V/x^2 and C(x) = V'/x as Taylor polynomials about the minimum.
template <class T>
std::pair<T, T> reduced_series(const PotentialWell& w, const T& x) {
    std::array<double, kWellSeriesOrder - 1> a{}, c{};
    for (std::size_t j = 0; j + 1 < kWellSeriesOrder; ++j) {
        a[j] = w.series[j + 2];
        c[j] = static_cast<double>(j + 2) * w.series[j + 2];
    }
    return {horner(a, x), horner(c, x)};
}

} // namespace

void PotentialWell::set_series(const Jet<kWellSeriesOrder>& at_minimum) {
    series = at_minimum.c;
    series[0] = 0.0;
    series[1] = 0.0;
}

const GaussLegendre& gauss_legendre16() {
    static const GaussLegendre gl = [] {
        GaussLegendre r{};
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return gl;
}

double potential_drop(const PotentialWell& w, double s, double u) {
    const double band = kDropBand * w.minimum;
    if (std::abs(s - w.minimum) < band && std::abs(u - w.minimum) < band) return drop_by_slope(w, s, u);
    return w.value(s) - w.value(u);
}

double reflect(const PotentialWell& w, double s) {
    const double m = w.minimum;
    if (!(s < m)) throw DomainError("reflection requires a point left of the minimum");
    double hi = m + (m - s);
    int grow = 0;
    while (potential_drop(w, s, hi) > 0.0) {
        hi = m + 2.0 * (hi - m);
        if (++grow > 1100 || !std::isfinite(hi)) throw DomainError("potential level is never reached right of the minimum");
    }
    auto g = [&](double u) { return potential_drop(w, s, u); };
    auto dg = [&](double u) { return -w.slope(u); };
    return safeguarded_newton(g, dg, m, hi, 1e-15);
}

EdgeQuadrature edge_integral(const PotentialWell& w, double s, double s_star, const EdgeWeight& weight,
                             double tol) {
    if (!(s_star > s)) throw DomainError("empty integration interval");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const double h = 0.5 * (s_star - s);
    const double slope_s = w.slope(s), slope_star = w.slope(s_star);
    const auto js = w.jet(s), jstar = w.jet(s_star);
    const double curv_s = 2.0 * js.c[2], curv_star = 2.0 * jstar.c[2];

    auto integrand = [&](double theta) {
        const double half = 0.5 * theta;
        const double left = 2.0 * h * std::cos(half) * std::cos(half);   // u - s
        const double right = 2.0 * h * std::sin(half) * std::sin(half);  // s* - u
        const double u = (left < right) ? s + left : s_star - right;
        double drop;
        if (left < kEdgeSeries * 2.0 * h)
            drop = -slope_s * left - 0.5 * curv_s * left * left;
        else if (right < kEdgeSeries * 2.0 * h)
            drop = slope_star * right - 0.5 * curv_star * right * right;
        else
            drop = potential_drop(w, s, u);
        const double ratio = drop / (left * right);
        return weight(u, drop) / std::sqrt(ratio);
    };

    int n = 12;
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += integrand((k - 0.5) * std::numbers::pi / n);
    double estimate = std::numbers::pi * sum / n;
    EdgeQuadrature out{estimate, std::numeric_limits<double>::infinity(), n};
    for (int level = 0; level < kMaxTriplings; ++level) {
        const int n3 = 3 * n;
        for (int k = 1; k <= n; ++k) {
            sum += integrand((3 * k - 2 - 0.5) * std::numbers::pi / n3);
            sum += integrand((3 * k - 0.5) * std::numbers::pi / n3);
        }
        n = n3;
        const double next = std::numbers::pi * sum / n;
        out = {next, std::abs(next - estimate), n};
        if (out.error <= tol) break;
        estimate = next;
    }
    return out;
}

EdgeQuadrature edge_integral_split(const PotentialWell& w, double s, double s_star, const EdgeWeight& weight,
                                   double tol) {
    if (!(s_star > w.minimum && w.minimum > s)) throw DomainError("minimum must lie strictly inside [s, s*]");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const double m = w.minimum;

    // Drop at u given its distances to s and s*.
    auto evaluate = [&](double u, double left, double right) {
        double drop;
        if (left <= right && left < 0.5 * s)
            drop = -slope_over_gap(w, s, left);
        else if (right < left && right < 0.5 * s_star)
            drop = -slope_over_gap(w, s_star, -right);
        else
            drop = potential_drop(w, s, u);
        if (!(drop > 0.0)) return 0.0;
        return weight(u, drop) / std::sqrt(drop);
    };

    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    EdgeQuadrature out;
    double error = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    out.value = integrator.integrate(
        [&](double u, double xc) {
            const double left = xc < 0.0 ? -xc : (m - s) - xc;
            return evaluate(u, left, s_star - u);
        },
        s, m, tol, &error, &l1, &levels);
    out.error = error;
    out.nodes = static_cast<int>(levels);
    out.value += integrator.integrate(
        [&](double u, double xc) {
            const double right = xc > 0.0 ? xc : (s_star - m) + xc;
            return evaluate(u, u - s, right);
        },
        m, s_star, tol, &error, &l1, &levels);
    out.error += error;
    out.nodes = std::max(out.nodes, static_cast<int>(levels));
    return out;
}

SlopeRatio value_over_slope(const PotentialWell& w, double u) {
    const double x = u - w.minimum;
    if (std::abs(x) < kSeriesBand * w.minimum) {
        const auto xj = Jet<1>::variable(x);
        const auto [a, c] = reduced_series(w, xj);
        const Jet<1> q = xj * a / c;
        return {q.c[0], q.c[1]};
    }
    const auto j = w.jet(u);
    const double v = j.c[0], v1 = j.c[1], v2 = 2.0 * j.c[2];
    return {v / v1, 1.0 - v * v2 / (v1 * v1)};
}

Jet<2> value_over_slope_squared(const PotentialWell& w, double u) {
    const double x = u - w.minimum;
    if (std::abs(x) < kSeriesBand * w.minimum) {
        const auto xj = Jet<2>::variable(x);
        const auto [a, c] = reduced_series(w, xj);
        return a / (c * c);
    }
    const auto j = w.jet(u);
    Jet<2> v, dv;
    v.c = {j.c[0], j.c[1], j.c[2]};
    dv.c = {j.c[1], 2.0 * j.c[2], 3.0 * j.c[3]};
    return v / (dv * dv);
}

} // namespace curvelaw
