#pragma once

#include "curvelaw/curvature_model.hpp"
#include "curvelaw/potential_well.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace curvelaw {

/// Potential F as a well with its minimum at s_f. Requires s_f and eps = +1.
[[nodiscard]] PotentialWell winding_well(const CurvatureModel& model);

/// The point s* > s_f with F(s*) = F(s), for 0 < s < s_f.
[[nodiscard]] double s_star(const CurvatureModel& model, double s);

struct QuadratureValue {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

/// Net winding on ]0, s_f[ from the singular integral over [s, s*].
[[nodiscard]] QuadratureValue omega_quadrature(const CurvatureModel& model, double s, double tol = 1e-10);

/// Net winding of the orbit through the real point s by integrating f along one period.
[[nodiscard]] double omega_ode(const CurvatureModel& model, double s, double tol = 1e-10);

struct CenterLimit {
    double value;              // omega(s_f-)
    double first_derivative;   // always 0
    double second_derivative;  // omega''(s_f-)
};
[[nodiscard]] CenterLimit omega_limit_at_sf(const CurvatureModel& model);

/// omega(0+); +infinity when the orbits approach a homoclinic loop.
[[nodiscard]] double omega_limit_at_zero(const CurvatureModel& model);

/// 2t/(1-t)^{3/2} + 2/(1 + sqrt(1-t)) for t < 1.
[[nodiscard]] double psi(double t);

/// Exact derivative of the net winding via the weighted singular integral.
[[nodiscard]] QuadratureValue omega_prime(const CurvatureModel& model, double s, double tol = 1e-10);

enum class BoundVariant {
    ratio_increasing,  // F''F/F'^2 increasing: uses (s* - s_f)/F'(s*)
    ratio_decreasing,  // F''F/F'^2 decreasing: uses (s - s_f)/F'(s)
    decreasing_law,    // f decreasing: weaker bound divided by sqrt 2
};

struct LowerBound {
    double value;
    BoundVariant variant;
};

/// Lower bound for omega(s) when f is monotone and F''F/F'^2 is monotone.
[[nodiscard]] LowerBound omega_lower_bound(const CurvatureModel& model, double s);

/// Direction of F''F/F'^2 on a log grid around s_f: +1, -1, or 0 when not monotone.
[[nodiscard]] int curvature_ratio_direction(const CurvatureModel& model);

enum class WindingMethod { quadrature, ode };

struct WindingProfile {
    std::string model;
    std::vector<double> grid;
    std::vector<double> omega;
    std::vector<double> error;
    double limit_at_zero = 0.0;
    double limit_at_sf = 0.0;
    WindingMethod method = WindingMethod::quadrature;
};

/// n points in ]0, s_f[: a quarter log-spaced from 1e-4 s_f to 0.1 s_f, the rest uniform up to s_f (1 - 1e-3).
[[nodiscard]] std::vector<double> profile_grid(const CurvatureModel& model, int n);

[[nodiscard]] WindingProfile winding_profile(const CurvatureModel& model, const std::vector<double>& grid,
                                             WindingMethod method, double tol = 1e-10);

[[nodiscard]] std::string to_string(WindingMethod method);

/// Columns s, omega, method, est_error.
void write_profile_csv(std::ostream& out, const std::vector<WindingProfile>& profiles);

} // namespace curvelaw
