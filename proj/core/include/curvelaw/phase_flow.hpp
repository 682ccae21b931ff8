#pragma once

#include "curvelaw/curvature_model.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace curvelaw {

using Complex = std::complex<double>;

/**
 * @brief A planar flow z' = i z k(z) - i for a curvature field k.
 *
 * The radial laws use k(z) = f(|z|); the supplement uses k(z) = g(|Re z|).
 */
struct PlanarFlow {
    std::function<double(Complex)> curvature;
    std::function<double(Complex)> invariant;
    /// Radial law used by the polar form near the origin; empty when the field is regular there.
    std::function<double(double)> radial_near_origin;
    /// Value of k(z) z as z -> 0 is finite (field -i at the origin).
    bool regular_at_origin = true;

    [[nodiscard]] Complex field(Complex z) const;
};

[[nodiscard]] PlanarFlow radial_flow(const CurvatureModel& model);

struct OrbitSample {
    double t;
    Complex z;
};

struct OrbitTrace {
    std::vector<OrbitSample> samples;
    std::optional<double> period;
    double hamiltonian_drift = 0.0;
    int orientation = 0;
};

enum class FixedPointKind { center, saddle, degenerate };
enum class CenterStatus { center, not_center, undetermined };

struct FixedPointInfo {
    double z;
    FixedPointKind kind;
    double second_derivative;  // z F''(|z|)
};

struct FixedPointReport {
    std::vector<FixedPointInfo> points;
    CenterStatus origin = CenterStatus::undetermined;
    CenterStatus infinity = CenterStatus::undetermined;
    bool continuum = false;  // z f(|z|) = 1 on a whole half-axis
};

/// i z f(|z|) - i; at the origin -i when z f(|z|) -> 0, else SingularityError.
[[nodiscard]] Complex vector_field(const CurvatureModel& model, Complex z);

/// Re z - F(|z|) - |z|.
[[nodiscard]] double hamiltonian(const CurvatureModel& model, Complex z);

/// Adaptive integration from p up to time t_end (either sign); samples every accepted step.
[[nodiscard]] OrbitTrace integrate_flow(const PlanarFlow& flow, Complex p, double t_end, double tol = 1e-10);
[[nodiscard]] OrbitTrace integrate_orbit(const CurvatureModel& model, Complex p, double t_end, double tol = 1e-10);

/// Flow map at a single time.
[[nodiscard]] Complex flow_map(const PlanarFlow& flow, Complex p, double t, double tol = 1e-10);

/// Quantities accumulated over one minimal period of the orbit through a real point.
struct PeriodIntegrals {
    double half_period;     // time to the opposite crossing of the real axis
    double period;          // first return to the start
    double curvature_integral;  // integral of k(z(t)) over one period
    double signed_area;     // enclosed signed area (> 0 counter-clockwise)
    double far_crossing;    // real coordinate of the opposite crossing
};

/// Integrates from a real point until it returns through the real axis.
[[nodiscard]] PeriodIntegrals period_integrals(const PlanarFlow& flow, double p, double tol = 1e-10,
                                               double t_max = 1e4);

/// Twice the time from s to the opposite crossing of the real axis.
[[nodiscard]] double minimal_period(const CurvatureModel& model, double s, double tol = 1e-10);

/// Period detected by first return to a Poincare section through p.
[[nodiscard]] std::optional<double> return_time(const PlanarFlow& flow, Complex p, double tol = 1e-10,
                                                double t_max = 1e4);

[[nodiscard]] FixedPointReport fixed_points(const CurvatureModel& model);

struct Window {
    double x_min = -2.0, x_max = 2.0, y_min = -2.0, y_max = 2.0;
};

struct Polyline {
    double level = 0.0;
    std::vector<Complex> points;
    bool closed = false;
};

/// Level sets of the first integral inside a window (marching squares).
[[nodiscard]] std::vector<Polyline> portrait_samples(const CurvatureModel& model, const Window& window, int n_levels,
                                                     int resolution = 241);

/// Generic contouring of a scalar field sampled on a grid.
[[nodiscard]] std::vector<Polyline> contour_field(const std::function<double(Complex)>& field, const Window& window,
                                                  const std::vector<double>& levels, int resolution);

/// Winding number of a closed polyline around a point.
[[nodiscard]] int winding_number(const std::vector<Complex>& loop, Complex point);

void write_orbit_csv(std::ostream& out, const OrbitTrace& trace);
void write_portrait_csv(std::ostream& out, const std::vector<Polyline>& lines);
[[nodiscard]] std::string portrait_svg(const std::vector<Polyline>& lines, const Window& window);

[[nodiscard]] std::string to_string(FixedPointKind kind);
[[nodiscard]] std::string to_string(CenterStatus status);

} // namespace curvelaw
