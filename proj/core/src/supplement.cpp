#include "curvelaw/supplement.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace curvelaw {

namespace {

constexpr double kCenterBand = 1e-6;
constexpr double kMonotoneMargin = 10.0;
constexpr double kDegenerateGap = 1e-9;
constexpr double kFlatFloor = 1e-13;

void require_segment(double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("s = " + fmt17(s) + " is outside the segment ]0, 1[");
}

std::vector<double> segment_grid(int n) {
    if (n < 4) throw DomainError("grid needs at least 4 points");
    const int n_log = n / 4, n_lin = n - n_log;
    std::vector<double> grid;
    for (int k = 0; k < n_log; ++k) grid.push_back(1e-4 * std::pow(1e3, k / static_cast<double>(n_log)));
    for (int k = 0; k < n_lin; ++k) grid.push_back(0.1 + (1.0 - 1e-3 - 0.1) * k / (n_lin - 1.0));
    return grid;
}

} // namespace

NormalModel::NormalModel(double delta) : delta_(delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("supplement law needs delta > 0, got " + fmt17(delta));
}

double NormalModel::G_at_zero() const {
    if (delta_ >= 1.0) return std::numeric_limits<double>::infinity();
    return (1.0 + delta_) / (1.0 - delta_);
}

PotentialWell NormalModel::well() const {
    PotentialWell w;
    const NormalModel self = *this;
    w.value = [self](double u) { return self.G(u); };
    w.slope = [self](double u) { return self.G_prime(u); };
    w.jet = [self](double u) { return self.G_of(Jet<3>::variable(u)); };
    w.minimum = 1.0;
    w.set_series(G_of(Jet<kWellSeriesOrder>::variable(1.0)));
    return w;
}

std::string NormalModel::spec() const { return "normal_monomial:delta=" + fmt17(delta_); }

QuadratureValue nu(const NormalModel& model, double s, double tol) {
    require_segment(s);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (1.0 - s < kCenterBand) return {nu_limit_at_one(model), (1.0 - s) * (1.0 - s)};
    const auto w = model.well();
    const double star = reflect(w, s);
    const auto q = edge_integral_split(w, s, star, [](double, double) { return 1.0; }, tol);
    if (!std::isfinite(q.value)) throw DomainError("period integral failed at s = " + fmt17(s));
    return {q.value / std::numbers::pi, q.error / std::numbers::pi};
}

double nu_ode(const NormalModel& model, double s, double tol) {
    require_segment(s);
    return period_integrals(psi_flow(model), s, tol).curvature_integral / (2.0 * std::numbers::pi);
}

NuDerivative nu_prime(const NormalModel& model, double s, double tol) {
    require_segment(s);
    const auto w = model.well();
    const double star = reflect(w, s);
    const double scale = model.G_prime(s) / (std::numbers::pi * model.G(s));
    const auto first = edge_integral_split(
        w, s, star,
        [&](double u, double) { return model.G_prime(u) * value_over_slope_squared(w, u).c[1]; }, tol);
    const auto second = edge_integral_split(
        w, s, star, [&](double u, double drop) { return drop * 2.0 * value_over_slope_squared(w, u).c[2]; }, tol);
    return {0.5 * scale * first.value, scale * second.value,
            std::abs(scale) * std::max(0.5 * first.error, second.error)};
}

double nu_limit_at_one(const NormalModel& model) { return 1.0 / std::sqrt(1.0 + model.delta()); }

double nu_limit_at_zero(const NormalModel& model) { return 1.0 / (1.0 + std::min(model.delta(), 1.0)); }

PlanarFlow psi_flow(const NormalModel& model) {
    PlanarFlow flow;
    flow.curvature = [model](Complex z) { return model.g(std::abs(z.real())); };
    flow.invariant = [model](Complex z) { return model.G(std::abs(z.real())) + z.imag() * z.imag(); };
    flow.regular_at_origin = true;
    return flow;
}

OrbitTrace psi_flow_orbit(const NormalModel& model, Complex p, double t_end, double tol) {
    if (!(p.real() > 0.0) || !(model.G(p.real()) + p.imag() * p.imag() < model.G_at_zero()))
        throw DomainError("start point " + fmt17(p.real()) + (p.imag() < 0 ? "" : "+") + fmt17(p.imag()) +
                          "i lies outside the region of closed orbits");
    return integrate_flow(psi_flow(model), p, t_end, tol);
}

CurveTrace supplement_curve(const NormalModel& model, double p, int periods, int samples, double tol) {
    if (!(p > 0.0)) throw DomainError("supplement curve needs a positive real start point");
    if (periods < 1) throw DomainError("number of periods must be positive");
    const auto flow = psi_flow(model);
    const double period = p == 1.0 ? 2.0 * std::numbers::pi : period_integrals(flow, p, tol).period;
    auto trace = reconstruct_flow(flow, Complex(p, 0.0), 0.0, periods * period, samples, tol);
    annotate(trace, flow.curvature);
    return trace;
}

int supplement_predicted_count(double delta) {
    if (!(delta > 8.0)) return 0;
    return static_cast<int>(std::ceil(std::sqrt(delta + 1.0))) - 3;
}

SupplementReport classify_supplement(double delta, int grid_points) {
    const NormalModel model(delta);
    SupplementReport r;
    r.delta = delta;
    r.predicted_count = supplement_predicted_count(delta);
    r.limit_at_zero = nu_limit_at_zero(model);
    r.limit_at_one = nu_limit_at_one(model);

    std::vector<double> errors;
    for (double s : segment_grid(grid_points)) {
        const auto q = nu(model, s);
        r.grid.push_back(s);
        r.nu_values.push_back(q.value);
        errors.push_back(q.error);
    }

    // For large delta nu is flat to rounding near 0, so steps within the noise margin are allowed.
    bool increasing = true, decreasing = true;
    double spread = 0.0;
    for (std::size_t i = 0; i + 1 < r.grid.size(); ++i) {
        const double d = r.nu_values[i + 1] - r.nu_values[i];
        const double margin = kMonotoneMargin * (errors[i] + errors[i + 1]) + kFlatFloor;
        if (d < -margin) increasing = false;
        if (d > margin) decreasing = false;
    }
    for (double v : r.nu_values) spread = std::max(spread, std::abs(v - r.nu_values.front()));
    const double net = r.nu_values.back() - r.nu_values.front();
    if (spread <= 1e-8) r.monotonicity = "constant";
    else if (increasing && net > 0.0) r.monotonicity = "increasing";
    else if (decreasing && net < 0.0) r.monotonicity = "decreasing";
    else r.monotonicity = "mixed";

    if (delta == 3.0) {
        r.family = "every centered ellipse with semi-axes s, 1/s";
        // nu = 1/2, so the curve closes after two orbit periods.
        r.ellipse_residual = ellipse_residual(supplement_curve(model, 2.0, 2));
        return r;
    }

    // Jordan solutions: nu(s) = 1/n strictly between the endpoint limits.
    const double lo = std::min(r.limit_at_zero, r.limit_at_one), hi = std::max(r.limit_at_zero, r.limit_at_one);
    std::vector<double> xs{0.0}, ys{r.limit_at_zero};
    xs.insert(xs.end(), r.grid.begin(), r.grid.end());
    ys.insert(ys.end(), r.nu_values.begin(), r.nu_values.end());
    xs.push_back(1.0);
    ys.push_back(r.limit_at_one);
    for (int n = std::max(2, static_cast<int>(std::ceil(1.0 / hi))); n <= static_cast<int>(std::floor(1.0 / lo));
         ++n) {
        const double target = 1.0 / n;
        if (std::abs(target - lo) < kDegenerateGap || std::abs(target - hi) < kDegenerateGap) {
            r.degenerate_n.push_back(n);
            continue;
        }
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if ((ys[i] < target) == (ys[i + 1] < target)) continue;
            const double a = std::max(xs[i], 1e-12), b = std::min(xs[i + 1], 1.0 - 1e-9);
            const double root = bisect([&](double s) { return nu(model, s).value - target; }, a, b, 1e-12);
            std::optional<double> oracle;
            try {
                oracle = std::abs(nu_ode(model, root) - target);
            } catch (const IntegrationError&) {
            }
            r.noncircular.push_back({root, n, std::abs(nu(model, root).value - target), oracle});
        }
    }
    std::sort(r.noncircular.begin(), r.noncircular.end(),
              [](const SupplementRecord& x, const SupplementRecord& y) { return x.s < y.s; });
    return r;
}

} // namespace curvelaw
