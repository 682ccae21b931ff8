#include "curvelaw/errors.hpp"
#include "curvelaw/winding.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace curvelaw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CurvatureModel mono(double delta) { return CurvatureModel::monomial(1.0, delta); }

double omega(const CurvatureModel& m, double s) { return omega_quadrature(m, s).value; }

} // namespace

TEST_CASE("reflection across the circle radius", "[winding]") {
    for (double s : {0.05, 0.3, 0.77}) CHECK_THAT(s_star(mono(0), s), WithinAbs(2.0 - s, 1e-12));
    for (double d : {0.5, 1.0, 4.0, 9.0}) {
        const auto m = mono(d);
        CHECK_THAT(s_star(m, 1e-9), WithinAbs(std::pow(d + 2.0, 1.0 / (d + 1.0)), 1e-6));
        // Equal potential levels on both sides.
        const double s = 0.4, star = s_star(m, s);
        CHECK(star > 1.0);
        CHECK_THAT(m.F(star), WithinAbs(m.F(s), 1e-13));
        CHECK_THAT(s_star(m, 1.0 - 1e-7), WithinAbs(1.0, 1e-6));
    }
}

TEST_CASE("flat family winds exactly once", "[winding]") {
    const auto m = mono(0);
    for (double s : {1e-3, 0.3, 0.9}) CHECK_THAT(omega(m, s), WithinAbs(1.0, 1e-9));
}

TEST_CASE("reference winding values", "[winding]") {
    CHECK_THAT(omega(mono(4), 0.4819), WithinAbs(0.5, 1e-4));
    CHECK_THAT(omega(mono(1), 0.5), WithinAbs(omega_ode(mono(1), 0.5), 1e-6));
    const auto linear = CurvatureModel::example(ExampleId::linear);
    CHECK_THAT(omega_ode(linear, 0.0), WithinAbs(0.75, 1e-4));
}

TEST_CASE("center limit and its curvature", "[winding]") {
    for (double d : {0.0, 1.0, 4.0, 9.0}) {
        const auto c = omega_limit_at_sf(mono(d));
        CHECK_THAT(c.value, WithinRel(1.0 / std::sqrt(d + 1.0), 1e-13));
        CHECK(c.first_derivative == 0.0);
        CHECK_THAT(c.second_derivative, WithinAbs(d * d / (12.0 * std::sqrt(d + 1.0)), 1e-10));
    }
    CHECK_THAT(omega_limit_at_sf(mono(4)).value, WithinAbs(0.4472, 1e-4));

    // Quadratic fit of the profile close to the center.
    const auto m = mono(4);
    const double h = 2e-3, c0 = omega_limit_at_sf(m).value;
    const double fit = 2.0 * (omega(m, 1.0 - h) - c0) / (h * h);
    CHECK_THAT(fit, WithinRel(omega_limit_at_sf(m).second_derivative, 2e-2));

    const auto affine = CurvatureModel::example(ExampleId::affine_reciprocal);
    CHECK_THAT(omega_limit_at_sf(affine).value, WithinAbs(std::sqrt(3.0) / 3.0, 1e-12));
    CHECK_THAT(omega(affine, 1.0 - 1e-4), WithinAbs(std::sqrt(3.0) / 3.0, 2e-3));
}

TEST_CASE("limit at the origin", "[winding]") {
    CHECK_THAT(omega_limit_at_zero(mono(4)), WithinAbs(0.6, 1e-15));
    CHECK(omega_limit_at_zero(CurvatureModel::example(ExampleId::inverse_square)) == 1.0);
    const auto affine = CurvatureModel::example(ExampleId::affine_reciprocal);
    CHECK_THAT(omega_limit_at_zero(affine), WithinAbs(2.0 * std::sqrt(3.0) / 3.0, 1e-12));
}

TEST_CASE("derivative of the winding", "[winding]") {
    CHECK_THAT(psi(0.0), WithinAbs(1.0, 1e-15));
    const double h = 1e-5;
    CHECK_THAT((psi(h) - psi(-h)) / (2 * h), WithinAbs(2.25, 1e-8));

    CHECK(std::abs(omega_prime(mono(4), 1.0 - 1e-7).value) < 1e-5);

    const auto two = mono(2);
    const double d = omega_prime(two, 0.5).value;
    const double fd = (omega(two, 0.5 + 1e-4) - omega(two, 0.5 - 1e-4)) / 2e-4;
    CHECK(d < 0.0);
    CHECK_THAT(d, WithinAbs(fd, 1e-4));

    for (double delta : {0.5, 1.0, 4.0, 9.0}) {
        const auto m = mono(delta);
        for (double s : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
            const double step = 1e-4 * s;
            const double central = (omega(m, s + step) - omega(m, s - step)) / (2 * step);
            const double exact = omega_prime(m, s).value;
            INFO("delta=" << delta << " s=" << s << " exact=" << exact << " fd=" << central);
            CHECK(std::abs(exact - central) <= 1e-3 * std::abs(central) + 1e-7);
        }
    }
}

TEST_CASE("lower bound for monotone laws", "[winding]") {
    const auto one = mono(1);
    const auto near = omega_lower_bound(one, 1.0 - 1e-4);
    CHECK_THAT(near.value, WithinAbs(1.0 / std::sqrt(2.0), 2e-3));
    const auto at09 = omega_lower_bound(one, 0.9);
    CHECK(at09.value <= omega(one, 0.9));
    CHECK(at09.value >= 0.95 * omega(one, 0.9));

    const auto three_halves = mono(1.5);
    for (double s : {0.1, 0.3, 0.5, 0.7}) CHECK(omega_lower_bound(three_halves, s).value < omega(three_halves, s));

    // Decreasing law: weaker variant.
    const auto negative = mono(-0.5);
    const auto weak = omega_lower_bound(negative, 0.5);
    CHECK(weak.variant == BoundVariant::decreasing_law);
    CHECK(weak.value < omega(negative, 0.5));
}

TEST_CASE("profile bounds by sign of f f'", "[winding]") {
    for (double d : {-0.5, 0.5, 1.0, 4.0}) {
        const auto m = mono(d);
        const auto p = winding_profile(m, profile_grid(m, 40), WindingMethod::quadrature);
        for (double w : p.omega) {
            INFO("delta=" << d << " omega=" << w);
            if (d > 0) {
                CHECK(w > 0.0);
                CHECK(w < 1.0 - 1e-6);
            } else {
                CHECK(w > 1.0 + 1e-6);
            }
        }
    }
}

TEST_CASE("family bounds and monotone profiles", "[winding]") {
    for (double d : {0.1, 0.5, 1.0, 1.5}) {
        const auto m = mono(d);
        const auto p = winding_profile(m, profile_grid(m, 60), WindingMethod::quadrature);
        INFO("delta=" << d);
        CHECK(*std::min_element(p.omega.begin(), p.omega.end()) > 0.5 + 1e-6);
        CHECK(*std::max_element(p.omega.begin(), p.omega.end()) < 1.0 - 1e-6);
    }
    for (double d : {1.5, 2.0, 4.0, 9.0, 20.0}) {
        const auto m = mono(d);
        const auto p = winding_profile(m, profile_grid(m, 200), WindingMethod::quadrature);
        for (std::size_t i = 0; i + 1 < p.omega.size(); ++i) {
            INFO("delta=" << d << " s=" << p.grid[i]);
            CHECK(p.omega[i + 1] - p.omega[i] < 0.0);
        }
    }
}

TEST_CASE("endpoint values approach the limits", "[winding]") {
    for (double d : {0.5, 1.0, 4.0, 9.0}) {
        const auto m = mono(d);
        INFO("delta=" << d);
        CHECK_THAT(omega(m, 1e-4), WithinAbs(omega_limit_at_zero(m), 2e-3));
        CHECK_THAT(omega(m, 1.0 - 1e-4), WithinAbs(omega_limit_at_sf(m).value, 2e-3));
    }
}

TEST_CASE("quadrature and orbit integration agree", "[winding]") {
    for (double d : {0.5, 4.0}) {
        const auto m = mono(d);
        for (double s : profile_grid(m, 9)) {
            INFO("delta=" << d << " s=" << s);
            CHECK_THAT(omega(m, s), WithinAbs(omega_ode(m, s), 1e-5));
        }
    }
}

TEST_CASE("profile grid and CSV", "[winding]") {
    const auto m = mono(4);
    const auto g = profile_grid(m, 20);
    REQUIRE(g.size() == 20);
    CHECK_THAT(g.front(), WithinRel(1e-4, 1e-12));
    CHECK_THAT(g.back(), WithinRel(1.0 - 1e-3, 1e-12));
    CHECK(std::is_sorted(g.begin(), g.end()));

    std::ostringstream out;
    write_profile_csv(out, {winding_profile(m, {0.5}, WindingMethod::quadrature)});
    CHECK(out.str().rfind("s,omega,method,est_error\n", 0) == 0);
    CHECK(out.str().find(",quad,") != std::string::npos);
}

TEST_CASE("winding outside the segment is rejected", "[winding]") {
    CHECK_THROWS_AS(omega_quadrature(mono(4), 1.2), DomainError);
    CHECK_THROWS_AS(omega_quadrature(mono(4), 0.0), DomainError);
    CHECK_THROWS_AS(omega_quadrature(CurvatureModel::example(ExampleId::reciprocal_shifted), 0.5), DomainError);
}
