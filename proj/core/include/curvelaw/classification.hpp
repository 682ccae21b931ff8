#pragma once

#include "curvelaw/curvature_model.hpp"
#include "curvelaw/winding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvelaw {

/// Position of I_f relative to -1 and +1.
enum class TaxonomyCase {
    If_disjoint_unit,  // I_f misses [-1, 1]: every periodic orbit is twisted
    If_inside_unit,    // I_f inside ]-1, 1[: every solution is unbounded
    minus_one_in_If,   // exactly one Jordan solution, a circle
    one_in_If,         // non-circular Jordan solutions may exist
};

struct CircleSolution {
    double radius;
    int orientation;          // +1 counter-clockwise
    bool any_center = false;  // every translate is a solution
};

struct JordanRecord {
    double s;
    int n;
    double residual;         // |omega(s) - 1/n| by quadrature
    double oracle_residual;  // |omega(s) - 1/n| by the ODE oracle
};

struct ClassificationReport {
    std::string model;
    std::optional<TaxonomyCase> taxonomy;  // absent outside the structural family
    std::vector<CircleSolution> circles;
    std::vector<JordanRecord> noncircular;
    std::optional<int> predicted_count;
    bool monotone_certified = false;
    std::vector<int> degenerate_n;  // n with 1/n equal to an endpoint limit, excluded
    std::string family;             // description when solutions form a continuum
};

[[nodiscard]] TaxonomyCase taxonomy(const CurvatureModel& model);

struct JordanSearch {
    std::vector<JordanRecord> records;
    bool monotone_certified = false;
    std::vector<int> degenerate_n;
};

/// Roots of omega(s) = 1/n, n >= 2, bracketed on the profile and refined by bisection.
[[nodiscard]] JordanSearch jordan_set(const CurvatureModel& model, const WindingProfile& profile,
                                      double root_tol = 1e-12, double quad_tol = 1e-10);

/// Full classification of a stored law.
[[nodiscard]] ClassificationReport classify(const CurvatureModel& model, int profile_points = 200,
                                            double quad_tol = 1e-10, double root_tol = 1e-12);

/// kappa = a r^delta, using the a = 1 results rescaled by a^{-1/(delta+1)}.
[[nodiscard]] ClassificationReport classify_monomial(double a, double delta, int profile_points = 200,
                                                     double quad_tol = 1e-10, double root_tol = 1e-12);

/// ceil(sqrt(delta+1)) - 2 for delta > 3, otherwise 0.
[[nodiscard]] int predicted_count(double delta);

[[nodiscard]] std::string to_string(TaxonomyCase c);

} // namespace curvelaw
