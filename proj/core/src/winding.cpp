#include "curvelaw/winding.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/phase_flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace curvelaw {

namespace {

// Closer than this (relative to s_f) the winding uses its quadratic expansion at s_f.
constexpr double kCenterBand = 1e-6;

double require_center(const CurvatureModel& model) {
    const auto sf = model.fixed_radius();
    if (!sf || model.eps() != 1)
        throw DomainError("net winding on ]0, s_f[ needs a circle radius s_f with eps = +1 (law " + model.spec() +
                          ")");
    return *sf;
}

void require_segment(double s, double sf) {
    if (!(s > 0.0 && s < sf))
        throw DomainError("s = " + fmt17(s) + " is outside the segment ]0, " + fmt17(sf) + "[");
}

} // namespace

PotentialWell winding_well(const CurvatureModel& model) {
    const double sf = require_center(model);
    PotentialWell w;
    w.value = [model](double u) { return model.F(u); };
    w.slope = [model](double u) { return model.F_prime(u); };
    w.jet = [model](double u) { return model.F_jet<3>(u); };
    w.minimum = sf;
    w.set_series(model.F_jet<kWellSeriesOrder>(sf));
    return w;
}

double s_star(const CurvatureModel& model, double s) {
    const double sf = require_center(model);
    require_segment(s, sf);
    return reflect(winding_well(model), s);
}

QuadratureValue omega_quadrature(const CurvatureModel& model, double s, double tol) {
    const double sf = require_center(model);
    require_segment(s, sf);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (sf - s < kCenterBand * sf) {
        const auto c = omega_limit_at_sf(model);
        const double x = s - sf;
        return {c.value + 0.5 * c.second_derivative * x * x, std::abs(x * x * x)};
    }
    const auto w = winding_well(model);
    const double star = reflect(w, s);
    auto weight = [&model](double u, double drop) { return u * model.f(u) / std::sqrt(2.0 * u - drop); };
    const auto q = edge_integral(w, s, star, weight, tol * std::numbers::pi);
    if (!std::isfinite(q.value))
        throw DomainError("orbit through s = " + fmt17(s) + " is not an untwisted loop around s_f");
    return {q.value / std::numbers::pi, q.error / std::numbers::pi};
}

double omega_ode(const CurvatureModel& model, double s, double tol) {
    const auto pi = period_integrals(radial_flow(model), s, tol);
    const double sign = pi.signed_area >= 0.0 ? 1.0 : -1.0;
    return sign * pi.curvature_integral / (2.0 * std::numbers::pi);
}

CenterLimit omega_limit_at_sf(const CurvatureModel& model) {
    const double sf = require_center(model);
    const auto [F2, F3, F4] = model.higher_derivatives_at_fixed_radius();
    const double base = sf * F2;
    const double numerator =
        9.0 * F2 * F2 - 3.0 * sf * F2 * (3.0 * F2 * F2 - 2.0 * F3) - sf * sf * (3.0 * F2 * F4 - 5.0 * F3 * F3);
    return {1.0 / std::sqrt(base), 0.0, numerator / (24.0 * std::pow(base, 2.5))};
}

double omega_limit_at_zero(const CurvatureModel& model) {
    if (const auto* m = std::get_if<Monomial>(&model.kind()); m && m->delta > -1.0)
        return 0.5 + 0.5 / (m->delta + 1.0);
    const double a = std::abs(model.sf_limit_at_zero());
    if (std::isinf(a)) return 1.0;
    if (a > 1.0) return 1.0 / std::sqrt(1.0 - 1.0 / (a * a));
    const double sf = require_center(model);
    const auto q = omega_quadrature(model, 1e-8 * sf, 1e-9);
    if (!std::isfinite(q.value) || q.error > 1e-3) return std::numeric_limits<double>::infinity();
    return q.value;
}

double psi(double t) {
    if (!(t < 1.0)) throw DomainError("psi is defined for t < 1");
    const double r = std::sqrt(1.0 - t);
    return 2.0 * t / (r * r * r) + 2.0 / (1.0 + r);
}

QuadratureValue omega_prime(const CurvatureModel& model, double s, double tol) {
    const double sf = require_center(model);
    require_segment(s, sf);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (sf - s < kCenterBand * sf) {
        const auto c = omega_limit_at_sf(model);
        return {c.second_derivative * (s - sf), (s - sf) * (s - sf)};
    }
    const auto w = winding_well(model);
    const double star = reflect(w, s);
    const double Fs = model.F(s);
    const double prefactor = model.F_prime(s) / (2.0 * std::numbers::pi * std::numbers::sqrt2 * Fs);
    auto weight = [&](double u, double drop) {
        const auto fj = model.f_jet<1>(u);
        const double f = fj.c[0], f1 = fj.c[1];
        const auto q = value_over_slope(w, u);
        const double bracket = (f + 2.0 * u * f1) * q.value + 2.0 * u * f * q.derivative - u * f +
                               0.25 * f * Fs * psi(drop / (2.0 * u));
        return bracket / std::sqrt(u);
    };
    const auto q = edge_integral(w, s, star, weight, tol / std::abs(prefactor));
    return {prefactor * q.value, std::abs(prefactor) * q.error};
}

int curvature_ratio_direction(const CurvatureModel& model) {
    const double sf = require_center(model);
    const auto w = winding_well(model);
    const double hi = model.F_at_zero() ? reflect(w, 1e-6 * sf) : 1e2 * sf;
    const double lo = 1e-4 * sf;
    constexpr int n = 400;
    int up = 0, down = 0;
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
        const double u = lo * std::pow(hi / lo, k / (n - 1.0));
        const double r = model.F_second(u) * value_over_slope_squared(w, u).c[0];
        if (k > 0) {
            const double d = r - prev;
            if (d > 1e-12 * std::abs(r)) ++up;
            if (d < -1e-12 * std::abs(r)) ++down;
        }
        prev = r;
    }
    if (down == 0 && up > 0) return 1;
    if (up == 0 && down > 0) return -1;
    return 0;
}

LowerBound omega_lower_bound(const CurvatureModel& model, double s) {
    const double sf = require_center(model);
    require_segment(s, sf);
    const auto w = winding_well(model);
    const double star = reflect(w, s);

    // Monotonicity of f over the range the integral samples.
    int up = 0, down = 0;
    for (int k = 0; k <= 200; ++k) {
        const double u = s + (star - s) * k / 200.0;
        const double d = model.f_prime(u);
        if (d > 0.0) ++up;
        if (d < 0.0) ++down;
    }
    const bool increasing = down == 0 && up > 0;
    const bool decreasing = up == 0 && down > 0;
    if (!increasing && !decreasing)
        throw DomainError("lower bound needs a monotone law; f changes monotonicity on [s, s*]");

    const int dir = curvature_ratio_direction(model);
    if (dir == 0)
        throw DomainError("F''F/F'^2 is not monotone; only the weaker variant divided by sqrt(2) is available");

    const double scale = dir > 0 ? (star - sf) / model.F_prime(star) : (s - sf) / model.F_prime(s);
    const double mean = 0.5 * (star * star + s * s), spread = 0.5 * (star * star - s * s);
    const auto& gl = gauss_legendre16();
    constexpr int panels = 8;
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = std::numbers::pi * p / panels, b = std::numbers::pi * (p + 1) / panels;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
            integral += 0.5 * (b - a) * gl.weights[i] * model.f(std::sqrt(mean - spread * std::cos(u)));
        }
    }
    double value = std::sqrt(sf) / std::numbers::pi * std::sqrt(scale) * integral;
    BoundVariant variant = dir > 0 ? BoundVariant::ratio_increasing : BoundVariant::ratio_decreasing;
    if (decreasing) {
        value /= std::numbers::sqrt2;
        variant = BoundVariant::decreasing_law;
    }
    return {value, variant};
}

std::vector<double> profile_grid(const CurvatureModel& model, int n) {
    const double sf = require_center(model);
    if (n < 2) throw DomainError("profile grid needs at least 2 points");
    const int n_log = n / 4;
    const int n_lin = n - n_log;
    std::vector<double> grid;
    const double a = 1e-4 * sf, b = 0.1 * sf, c = sf * (1.0 - 1e-3);
    for (int k = 0; k < n_log; ++k) grid.push_back(a * std::pow(b / a, static_cast<double>(k) / n_log));
    const double start = n_log > 0 ? b : a;
    for (int k = 0; k < n_lin; ++k) grid.push_back(start + (c - start) * k / (n_lin - 1.0 > 0 ? n_lin - 1.0 : 1.0));
    return grid;
}

WindingProfile winding_profile(const CurvatureModel& model, const std::vector<double>& grid, WindingMethod method,
                               double tol) {
    WindingProfile p;
    p.model = model.spec();
    p.grid = grid;
    p.method = method;
    p.limit_at_sf = omega_limit_at_sf(model).value;
    p.limit_at_zero = omega_limit_at_zero(model);
    for (double s : grid) {
        if (method == WindingMethod::quadrature) {
            const auto q = omega_quadrature(model, s, tol);
            p.omega.push_back(q.value);
            p.error.push_back(q.error);
        } else {
            p.omega.push_back(omega_ode(model, s, tol));
            p.error.push_back(tol);
        }
    }
    return p;
}

std::string to_string(WindingMethod method) { return method == WindingMethod::quadrature ? "quad" : "ode"; }

void write_profile_csv(std::ostream& out, const std::vector<WindingProfile>& profiles) {
    out << "s,omega,method,est_error\n";
    for (const auto& p : profiles)
        for (std::size_t i = 0; i < p.grid.size(); ++i)
            out << fmt17(p.grid[i]) << ',' << fmt17(p.omega[i]) << ',' << to_string(p.method) << ','
                << fmt17(p.error[i]) << '\n';
}

} // namespace curvelaw
