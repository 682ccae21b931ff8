#pragma once

#include "curvelaw/jet.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace curvelaw {

/// Hard-coded curvature laws used as fixtures.
enum class ExampleId {
    linear,                  // s
    reciprocal_shifted,      // 1/(1+s)
    inverse_square,          // 1/s^2
    inverse,                 // 1/s
    quartic_ratio,           // (1+3s^4)/(s+3s^3)
    affine_reciprocal,       // 3 - 2/s
    exp_ratio,               // e^{-s}/s
    inverse_cubic,           // 1/(s+s^3)
    shifted_inverse_square,  // (s+2)/s^2
    shifted_inverse_cube,    // (s^2+2)/s^3
};

struct Monomial {
    double a = 1.0;
    double delta = 0.0;
};

struct NamedExample {
    ExampleId id = ExampleId::linear;
};

using LawKind = std::variant<Monomial, NamedExample>;

/// Open interval with possibly infinite endpoints.
struct ExtendedInterval {
    double lower;
    double upper;

    [[nodiscard]] bool contains(double x) const { return lower < x && x < upper; }
};

/// Which structural family the law belongs to.
enum class Membership {
    none,         // f f' F'' vanishes somewhere
    family,       // f f' F'' never vanishes
    family_star,  // additionally 1 lies in I_f
};

/// Potential data at a point, with the higher derivatives at the circle radius.
struct PotentialEval {
    double s = 0.0;
    double F = 0.0;
    double F1 = 0.0;
    std::array<double, 3> F2plus{};  // F'', F''', F'''' at s_f (zero when s_f is absent)
};

/**
 * @brief A curvature law kappa = f(r) with its normalized potential.
 *
 * The potential F satisfies F'(s) = s f(s) - 1. It is normalized by F(s_f) = 0
 * when the circle radius s_f exists, and by F(1) = 0 otherwise.
 */
class CurvatureModel {
public:
    explicit CurvatureModel(LawKind kind, std::string spec = {});

    [[nodiscard]] static CurvatureModel monomial(double a, double delta);
    [[nodiscard]] static CurvatureModel example(ExampleId id);

    /// Accepts "monomial:a=<float>,delta=<float>" or "example:<id>".
    [[nodiscard]] static CurvatureModel parse(std::string_view spec);

    [[nodiscard]] const std::string& spec() const { return spec_; }
    [[nodiscard]] const LawKind& kind() const { return kind_; }

    [[nodiscard]] double f(double s) const;
    [[nodiscard]] double f_prime(double s) const;
    [[nodiscard]] double F(double s) const;
    [[nodiscard]] double F_prime(double s) const;
    [[nodiscard]] double F_second(double s) const;

    /// Taylor expansions of f and F at s (instantiated for N = 1, 2, 3, 4, 8, 16).
    template <std::size_t N> [[nodiscard]] Jet<N> f_jet(double s) const;
    template <std::size_t N> [[nodiscard]] Jet<N> F_jet(double s) const;

    [[nodiscard]] PotentialEval potential(double s) const;

    [[nodiscard]] std::optional<double> fixed_radius() const { return s_f_; }
    [[nodiscard]] std::optional<int> eps() const { return eps_; }
    [[nodiscard]] std::optional<ExtendedInterval> interval_If() const;
    [[nodiscard]] Membership membership() const { return membership_; }
    [[nodiscard]] bool in_family() const { return membership_ != Membership::none; }
    [[nodiscard]] bool in_family_star() const { return membership_ == Membership::family_star; }

    /// lim s f(s) as s -> 0+ and s -> infinity (may be infinite).
    [[nodiscard]] double sf_limit_at_zero() const { return sf_zero_; }
    [[nodiscard]] double sf_limit_at_infinity() const { return sf_inf_; }

    /// F(0+) when finite.
    [[nodiscard]] std::optional<double> F_at_zero() const { return F_zero_; }

    /// True when f(0+) is finite.
    [[nodiscard]] bool bounded_near_zero() const { return bounded_zero_; }

    /// F''(s_f) .. F''''(s_f); requires s_f.
    [[nodiscard]] std::array<double, 3> higher_derivatives_at_fixed_radius() const;

private:
    LawKind kind_;
    std::string spec_;
    std::optional<double> s_f_;
    std::optional<int> eps_;
    Membership membership_ = Membership::none;
    double sf_zero_ = 0.0;
    double sf_inf_ = 0.0;
    std::optional<double> F_zero_;
    bool bounded_zero_ = false;
};

[[nodiscard]] std::string example_name(ExampleId id);
[[nodiscard]] std::optional<ExampleId> example_from_name(std::string_view name);
[[nodiscard]] const std::vector<ExampleId>& all_examples();

} // namespace curvelaw
