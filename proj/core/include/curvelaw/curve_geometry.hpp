#pragma once

#include "curvelaw/curvature_model.hpp"
#include "curvelaw/phase_flow.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace curvelaw {

/// A solution curve sampled uniformly in arc length.
struct CurveTrace {
    std::vector<double> t;        // arc length
    std::vector<Complex> points;  // c(t)
    std::vector<Complex> orbit;   // flow state z(t) used to build c
    std::vector<double> omega_star;  // Re of the phase integral over pi
    bool closed = false;
    bool simple = false;
    std::optional<int> winding_n;
    double closure_gap = 0.0;
    double diameter = 0.0;
    double max_curvature_residual = 0.0;
};

/**
 * @brief Curve through the phase integral c = |p| e^{i theta0} e^{i L(t)}, L' = 1/conj(z).
 *
 * Integrates the flow and L together and samples both at `samples` uniform times in
 * [0, t_end]. The closure gap and diameter are filled in; the other checks are separate.
 */
[[nodiscard]] CurveTrace reconstruct_flow(const PlanarFlow& flow, Complex p, double theta0, double t_end,
                                          int samples = 10000, double tol = 1e-12);

/// Curve for the orbit through the real point s over n_halfperiods half-periods.
[[nodiscard]] CurveTrace reconstruct(const CurvatureModel& model, double s, double theta0, int n_halfperiods,
                                     int samples = 10000, double tol = 1e-12);

/// Closed means the end point is within rel_gap * diameter of the start.
[[nodiscard]] bool is_closed(const CurveTrace& trace, double rel_gap = 1e-6);

/// No two non-adjacent segments of the closed polygon intersect.
[[nodiscard]] bool simplicity_check(const CurveTrace& trace);

/// Largest |Menger curvature - k(c)| over interior samples.
[[nodiscard]] double curvature_residual(const std::function<double(Complex)>& curvature, const CurveTrace& trace);
[[nodiscard]] double curvature_residual(const CurvatureModel& model, const CurveTrace& trace);

/// RMS Sampson distance of the best algebraic conic fit, divided by the diameter.
[[nodiscard]] double ellipse_residual(const CurveTrace& trace);

/// Total signed tangent turning of the closed polygon over 2 pi.
[[nodiscard]] double turning_number(const CurveTrace& trace);

/// Largest |z from the curve - integrated orbit z|, with z_c = -i conj(c) e^{i theta_c}.
[[nodiscard]] double z_correspondence_error(const CurveTrace& trace);

/// Runs closure, simplicity and curvature checks and stores the results.
void annotate(CurveTrace& trace, const std::function<double(Complex)>& curvature);

void write_curve_csv(std::ostream& out, const CurveTrace& trace);
void write_curve_json(std::ostream& out, const CurveTrace& trace);
[[nodiscard]] std::string curves_svg(const std::vector<CurveTrace>& traces);

} // namespace curvelaw
