#pragma once

#include "curvelaw/curve_geometry.hpp"
#include "curvelaw/jet.hpp"
#include "curvelaw/phase_flow.hpp"
#include "curvelaw/potential_well.hpp"
#include "curvelaw/winding.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace curvelaw {

/// Monomial law g(s) = s^delta for curvature depending on |Re(z conj(n))|; the circle radius is 1.
class NormalModel {
public:
    explicit NormalModel(double delta);

    [[nodiscard]] double delta() const { return delta_; }
    [[nodiscard]] double g(double s) const { return std::pow(s, delta_); }
    /// G with G'(s) = 2s - 2/g(s) and G(1) = 0.
    [[nodiscard]] double G(double s) const { return G_of(s); }
    [[nodiscard]] double G_prime(double s) const { return 2.0 * s - 2.0 * std::pow(s, -delta_); }
    /// G(0+); +infinity for delta >= 1.
    [[nodiscard]] double G_at_zero() const;
    [[nodiscard]] PotentialWell well() const;
    [[nodiscard]] std::string spec() const;

    template <class T>
    [[nodiscard]] T G_of(const T& s) const {
        using std::log;
        using std::pow;
        if (delta_ == 1.0) return s * s - 2.0 * log(s) - 1.0;
        return s * s + (2.0 / (delta_ - 1.0)) * pow(s, 1.0 - delta_) - (delta_ + 1.0) / (delta_ - 1.0);
    }

private:
    double delta_;
};

/// (1/pi) times the integral of 1/sqrt(G(s) - G(u)) over [s, s*], for 0 < s < 1.
[[nodiscard]] QuadratureValue nu(const NormalModel& model, double s, double tol = 1e-10);

/// Integral of g(|Re z|) over one period of the orbit through s, divided by 2 pi.
[[nodiscard]] double nu_ode(const NormalModel& model, double s, double tol = 1e-10);

/// nu'(s) from the two integral forms with K = G/G'^2.
struct NuDerivative {
    double slope_form;      // G'/(2 pi G) * int G' K' / sqrt(G(s) - G(u))
    double curvature_form;  // G'/(pi G) * int sqrt(G(s) - G(u)) K''
    double error;
};
[[nodiscard]] NuDerivative nu_prime(const NormalModel& model, double s, double tol = 1e-10);

/// 1/sqrt(1 + delta).
[[nodiscard]] double nu_limit_at_one(const NormalModel& model);
/// 1/(1 + min(delta, 1)).
[[nodiscard]] double nu_limit_at_zero(const NormalModel& model);

/// z' = i z g(|Re z|) - i with invariant G(Re z) + (Im z)^2.
[[nodiscard]] PlanarFlow psi_flow(const NormalModel& model);

/// Orbit from p in A_g = {Re z > 0, G(Re z) + (Im z)^2 < G(0+)}.
[[nodiscard]] OrbitTrace psi_flow_orbit(const NormalModel& model, Complex p, double t_end, double tol = 1e-10);

/// Curve over the given number of orbit periods, starting at the real point p.
[[nodiscard]] CurveTrace supplement_curve(const NormalModel& model, double p, int periods = 1, int samples = 10000,
                                          double tol = 1e-12);

struct SupplementRecord {
    double s;
    int n;
    double residual;
    std::optional<double> oracle_residual;  // empty when the orbit integration stalls
};

struct SupplementReport {
    double delta = 0.0;
    int predicted_count = 0;
    std::vector<SupplementRecord> noncircular;
    std::vector<int> degenerate_n;
    std::optional<std::string> family;
    std::string monotonicity;  // increasing, decreasing or constant
    double limit_at_zero = 0.0;
    double limit_at_one = 0.0;
    std::vector<double> grid;
    std::vector<double> nu_values;
    std::optional<double> ellipse_residual;  // delta = 3 orbit-to-ellipse check
};

/// ceil(sqrt(delta + 1)) - 3 for delta > 8, else 0.
[[nodiscard]] int supplement_predicted_count(double delta);

[[nodiscard]] SupplementReport classify_supplement(double delta, int grid_points = 100);

} // namespace curvelaw
