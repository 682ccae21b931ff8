#pragma once

#include "curvelaw/jet.hpp"

#include <array>
#include <functional>

namespace curvelaw {

/// Order of the Taylor expansion kept at the minimum.
inline constexpr std::size_t kWellSeriesOrder = 16;

/**
 * @brief A one-dimensional potential with a non-degenerate minimum.
 *
 * Shared by the winding function and the supplement period function: both are
 * integrals over [s, s*] with inverse square-root behaviour at the two ends,
 * where s* > minimum is the point on the same potential level as s.
 */
struct PotentialWell {
    std::function<double(double)> value;   // V(u)
    std::function<double(double)> slope;   // V'(u)
    std::function<Jet<3>(double)> jet;     // Taylor coefficients of V at u
    double minimum = 1.0;                  // location m of the minimum
    std::array<double, kWellSeriesOrder + 1> series{};  // V(m + x) = sum series[k] x^k

    void set_series(const Jet<kWellSeriesOrder>& at_minimum);
};

/// V(s) - V(u), accurate near the minimum.
[[nodiscard]] double potential_drop(const PotentialWell& w, double s, double u);

/// The point s* > m with V(s*) = V(s), for s < m.
[[nodiscard]] double reflect(const PotentialWell& w, double s);

struct EdgeQuadrature {
    double value = 0.0;
    double error = 0.0;
    int nodes = 0;
};

/// Integrand weight; receives u and the drop V(s) - V(u).
using EdgeWeight = std::function<double(double u, double drop)>;

/**
 * @brief Integral of weight(u, drop) / sqrt(V(s) - V(u)) over [s, s*].
 *
 * Uses V(s) - V(u) = (u - s)(s* - u) R(u) and the substitution
 * u = (s + s*)/2 + ((s* - s)/2) cos(theta), then midpoint nodes in theta that
 * nest under tripling. Stops when successive estimates differ by at most tol.
 */
[[nodiscard]] EdgeQuadrature edge_integral(const PotentialWell& w, double s, double s_star,
                                           const EdgeWeight& weight, double tol);

/**
 * @brief The same integral split at the minimum, each half by tanh-sinh quadrature.
 *
 * Drops near either end come from slope quadrature over the short gap, so the
 * result stays accurate when s* is many orders of magnitude larger than s.
 * tol is relative; `nodes` reports the deeper refinement level of the two halves.
 */
[[nodiscard]] EdgeQuadrature edge_integral_split(const PotentialWell& w, double s, double s_star,
                                                 const EdgeWeight& weight, double tol);

/// V/V' and its derivative, with a series evaluation near the minimum.
struct SlopeRatio {
    double value;
    double derivative;
};
[[nodiscard]] SlopeRatio value_over_slope(const PotentialWell& w, double u);

/// V/V'^2 with its first two derivatives (c[2] holds half the second derivative).
[[nodiscard]] Jet<2> value_over_slope_squared(const PotentialWell& w, double u);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::array<double, 16> nodes;
    std::array<double, 16> weights;
};
[[nodiscard]] const GaussLegendre& gauss_legendre16();

} // namespace curvelaw
