#include "curvelaw/curvature_model.hpp"
#include "curvelaw/errors.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace curvelaw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<CurvatureModel> every_model() {
    std::vector<CurvatureModel> out;
    for (double d : {-0.5, 0.0, 1.0, 4.0, 9.0}) out.push_back(CurvatureModel::monomial(1.0, d));
    out.push_back(CurvatureModel::monomial(2.5, 3.0));
    for (auto id : all_examples()) out.push_back(CurvatureModel::example(id));
    return out;
}

// Five-point central difference.
double derivative(const CurvatureModel& m, double s) {
    const double h = 1e-3 * s;
    return (m.F(s - 2 * h) - 8 * m.F(s - h) + 8 * m.F(s + h) - m.F(s + 2 * h)) / (12 * h);
}

} // namespace

TEST_CASE("law values at reference radii", "[curvature_model]") {
    CHECK(CurvatureModel::monomial(1, 4).f(1.0) == 1.0);
    CHECK_THAT(CurvatureModel::example(ExampleId::affine_reciprocal).f(2.0 / 3.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(CurvatureModel::example(ExampleId::inverse_square).f(2.0), WithinAbs(0.25, 1e-15));
}

TEST_CASE("potential normalization and closed forms", "[curvature_model]") {
    const auto quartic = CurvatureModel::monomial(1, 4);
    CHECK_THAT(quartic.F(1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(CurvatureModel::monomial(1, 0).F(3.0), WithinAbs(2.0, 1e-14));
    REQUIRE(quartic.F_at_zero());
    CHECK_THAT(*quartic.F_at_zero(), WithinAbs(5.0 / 6.0, 1e-14));
    CHECK_THAT(quartic.F(1e-9), WithinAbs(5.0 / 6.0, 1e-8));

    // Without a circle radius the potential vanishes at 1.
    const auto shifted = CurvatureModel::example(ExampleId::shifted_inverse_cube);
    CHECK(!shifted.fixed_radius());
    CHECK_THAT(shifted.F(1.0), WithinAbs(0.0, 1e-15));
}

TEST_CASE("circle radius and sign", "[curvature_model]") {
    const auto quartic = CurvatureModel::monomial(1, 4);
    REQUIRE(quartic.fixed_radius());
    CHECK_THAT(*quartic.fixed_radius(), WithinAbs(1.0, 1e-14));
    CHECK(quartic.eps() == 1);

    const auto affine = CurvatureModel::example(ExampleId::affine_reciprocal);
    REQUIRE(affine.fixed_radius());
    CHECK_THAT(*affine.fixed_radius(), WithinAbs(1.0, 1e-14));

    CHECK(!CurvatureModel::example(ExampleId::reciprocal_shifted).fixed_radius());

    // a r^delta has its circle at a^{-1/(delta+1)}.
    const auto scaled = CurvatureModel::monomial(2.5, 3.0);
    REQUIRE(scaled.fixed_radius());
    CHECK_THAT(*scaled.fixed_radius(), WithinRel(std::pow(2.5, -0.25), 1e-13));
}

TEST_CASE("potential derivative matches s f(s) - 1 on a log grid", "[curvature_model]") {
    for (const auto& m : every_model()) {
        for (int k = 0; k <= 60; ++k) {
            const double s = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
            const double sf = s * m.f(s);
            INFO(m.spec() << " s=" << s);
            CHECK(std::abs(derivative(m, s) - (sf - 1.0)) <= 1e-8 * (1.0 + std::abs(sf)));
            CHECK(std::abs(m.F_prime(s) - (sf - 1.0)) <= 1e-12 * (1.0 + std::abs(sf)));
        }
    }
}

TEST_CASE("monomial potential is non-negative and vanishes only at the circle", "[curvature_model]") {
    for (double d : {-0.5, 0.0, 0.5, 1.0, 4.0, 9.0}) {
        const auto m = CurvatureModel::monomial(1.0, d);
        for (int k = 0; k <= 120; ++k) {
            const double s = std::pow(10.0, -3.0 + 6.0 * k / 120.0);
            INFO("delta=" << d << " s=" << s);
            CHECK(m.F(s) >= 0.0);
            if (std::abs(s - 1.0) > 0.05) CHECK(m.F(s) > 0.0);
        }
    }
}

TEST_CASE("higher derivatives at the circle radius", "[curvature_model]") {
    // F'' = (s f)' = (delta+1) s^delta, F''' = delta (delta+1) s^{delta-1}, ...
    const auto [F2, F3, F4] = CurvatureModel::monomial(1, 4).higher_derivatives_at_fixed_radius();
    CHECK_THAT(F2, WithinRel(5.0, 1e-12));
    CHECK_THAT(F3, WithinRel(20.0, 1e-12));
    CHECK_THAT(F4, WithinRel(60.0, 1e-12));
}

TEST_CASE("interval of s f(s) and structural family", "[curvature_model]") {
    const double inf = std::numeric_limits<double>::infinity();
    struct Row {
        ExampleId id;
        double lo, hi;
        Membership membership;
    };
    const Row rows[] = {
        {ExampleId::linear, 0.0, inf, Membership::family_star},
        {ExampleId::reciprocal_shifted, 0.0, 1.0, Membership::family},
        {ExampleId::shifted_inverse_square, -inf, -1.0, Membership::family},
        {ExampleId::exp_ratio, -1.0, 0.0, Membership::family},
        {ExampleId::inverse_square, -inf, 0.0, Membership::family},
    };
    for (const auto& r : rows) {
        const auto m = CurvatureModel::example(r.id);
        INFO(example_name(r.id));
        const auto I = m.interval_If();
        REQUIRE(I);
        CHECK(I->lower == r.lo);
        CHECK(I->upper == r.hi);
        CHECK(m.membership() == r.membership);
    }
    CHECK(CurvatureModel::example(ExampleId::inverse).membership() == Membership::none);
    CHECK(CurvatureModel::example(ExampleId::affine_reciprocal).membership() == Membership::none);
    CHECK(CurvatureModel::monomial(1, 4).in_family_star());

    // Endpoints agree with s f(s) at extreme radii.
    for (auto id : all_examples()) {
        const auto m = CurvatureModel::example(id);
        const auto I = m.interval_If();
        if (!I || !m.eps()) continue;
        const double e = *m.eps();
        const double near0 = e * 1e-9 * m.f(1e-9), far = e * 1e9 * m.f(1e9);
        const double lo = std::min(near0, far), hi = std::max(near0, far);
        INFO(example_name(id));
        if (std::isfinite(I->lower)) CHECK_THAT(lo, WithinAbs(I->lower, 1e-6));
        else CHECK(lo < -1e3);
        if (std::isfinite(I->upper)) CHECK_THAT(hi, WithinAbs(I->upper, 1e-6));
        else CHECK(hi > 1e3);
    }
}

TEST_CASE("model strings parse and reject garbage", "[curvature_model]") {
    const auto m = CurvatureModel::parse("monomial:a=1,delta=9");
    REQUIRE(m.fixed_radius());
    CHECK_THAT(m.f(2.0), WithinRel(512.0, 1e-15));
    CHECK(CurvatureModel::parse("example:linear").f(0.5) == 0.5);
    CHECK_THROWS_AS(CurvatureModel::parse("monomial:a=x"), DomainError);
    CHECK_THROWS_AS(CurvatureModel::parse("example:nope"), DomainError);
    CHECK_THROWS_AS(CurvatureModel::monomial(1, 4).f(-1.0), DomainError);
    CHECK_THROWS_AS(CurvatureModel::monomial(1, 4).F(0.0), DomainError);
}
