#include "curvelaw/errors.hpp"
#include "curvelaw/supplement.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace curvelaw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("isochronous case", "[supplement]") {
    const NormalModel three(3);
    for (int k = 1; k <= 20; ++k) {
        const double s = k / 21.0;
        INFO("s=" << s);
        CHECK_THAT(nu(three, s).value, WithinAbs(0.5, 1e-8));
    }
    for (double s : {0.2, 0.5, 0.8}) {
        const auto d = nu_prime(three, s);
        CHECK(std::abs(d.slope_form) < 1e-7);
        CHECK(std::abs(d.curvature_form) < 1e-7);
    }
}

TEST_CASE("endpoint limits", "[supplement]") {
    CHECK_THAT(nu_limit_at_one(NormalModel(8)), WithinRel(1.0 / 3.0, 1e-15));
    CHECK_THAT(nu_limit_at_zero(NormalModel(0.5)), WithinRel(2.0 / 3.0, 1e-15));
    CHECK_THAT(nu_limit_at_zero(NormalModel(4)), WithinRel(0.5, 1e-15));
    for (double d : {0.5, 1.0, 2.0, 4.0, 9.0}) {
        const NormalModel m(d);
        INFO("delta=" << d);
        // sqrt(2 / G''(1)) with G'' = 2 + 2 delta.
        CHECK_THAT(nu(m, 1.0 - 1e-4).value, WithinAbs(1.0 / std::sqrt(1.0 + d), 2e-3));
    }

    // For delta < 1 the approach to the origin limit is like s^{1 - delta}.
    const NormalModel half(0.5);
    double prev = 0.0;
    for (double s : {1e-6, 1e-8, 1e-10}) {
        const double err = nu(half, s).value - 2.0 / 3.0;
        INFO("s=" << s << " err=" << err);
        CHECK(err > 0.0);
        CHECK(err < 2e-3);
        if (prev > 0.0) CHECK_THAT(prev / err, WithinRel(10.0, 0.05));
        prev = err;
    }
}

TEST_CASE("quadrature agrees with the orbit integral", "[supplement]") {
    for (double d : {0.5, 1.0, 2.0, 4.0}) {
        const NormalModel m(d);
        for (double s : {0.1, 0.35, 0.6, 0.9}) {
            INFO("delta=" << d << " s=" << s);
            CHECK_THAT(nu(m, s).value, WithinAbs(nu_ode(m, s), 1e-7));
        }
    }
}

TEST_CASE("both derivative forms agree with finite differences", "[supplement]") {
    for (double d : {0.5, 2.0, 8.0}) {
        const NormalModel m(d);
        for (double s : {0.2, 0.5, 0.8}) {
            const auto dv = nu_prime(m, s);
            const double h = 1e-4;
            const double fd = (nu(m, s + h).value - nu(m, s - h).value) / (2 * h);
            INFO("delta=" << d << " s=" << s << " slope=" << dv.slope_form << " curv=" << dv.curvature_form);
            CHECK(std::abs(dv.slope_form - dv.curvature_form) <= 1e-7);
            CHECK(std::abs(dv.slope_form - fd) <= 1e-4);
        }
    }
    CHECK(nu_prime(NormalModel(2), 0.5).slope_form > 0.0);
    CHECK(nu_prime(NormalModel(8), 0.5).slope_form < 0.0);
}

TEST_CASE("curvature of nu at the center", "[supplement]") {
    for (double d : {1.0, 2.0, 4.0, 8.0}) {
        const NormalModel m(d);
        const double h = 0.02, c0 = nu_limit_at_one(m);
        const double fit = 2.0 * (nu(m, 1.0 - h).value - c0) / (h * h);
        const double expected = d * (d - 3.0) / (12.0 * std::sqrt(d + 1.0));
        INFO("delta=" << d << " fit=" << fit << " expected=" << expected);
        CHECK((fit > 0.0) == (expected > 0.0));
        CHECK_THAT(fit, WithinRel(expected, 0.1));
    }
}

TEST_CASE("monotonicity by exponent", "[supplement]") {
    for (double d : {0.5, 1.0, 2.0}) CHECK(classify_supplement(d, 60).monotonicity == "increasing");
    for (double d : {4.0, 8.0, 20.0}) CHECK(classify_supplement(d, 60).monotonicity == "decreasing");
    CHECK(classify_supplement(3.0, 60).monotonicity == "constant");
}

TEST_CASE("supplement classification counts", "[supplement]") {
    const auto eight = classify_supplement(8);
    CHECK(eight.noncircular.empty());
    CHECK(eight.predicted_count == 0);

    const auto nine = classify_supplement(9);
    REQUIRE(nine.noncircular.size() == 1);
    CHECK(nine.noncircular[0].n == 3);
    CHECK(nine.noncircular[0].residual <= 1e-9);
    CHECK(supplement_predicted_count(9) == 1);

    for (double d : {15.0, 20.0, 35.0}) {
        const auto r = classify_supplement(d);
        INFO("delta=" << d);
        CHECK(static_cast<int>(r.noncircular.size()) == supplement_predicted_count(d));
    }

    const auto three = classify_supplement(3);
    REQUIRE(three.family);
    REQUIRE(three.ellipse_residual);
    CHECK(*three.ellipse_residual <= 1e-6);
    CHECK(three.noncircular.empty());
}

TEST_CASE("isochronous orbit traces an ellipse", "[supplement]") {
    const NormalModel three(3);
    const auto c = supplement_curve(three, 2.0, 2);
    CHECK(c.closed);
    CHECK(c.simple);
    CHECK(ellipse_residual(c) <= 1e-6);
    double rmax = 0.0, rmin = 1e9;
    for (const auto& p : c.points) {
        rmax = std::max(rmax, std::abs(p));
        rmin = std::min(rmin, std::abs(p));
    }
    CHECK_THAT(rmax, WithinAbs(2.0, 1e-6));
    CHECK_THAT(rmin, WithinAbs(0.5, 1e-6));

    // The flow orbit itself: semi-axes 2 and 1/2 in the phase plane.
    const auto orbit = psi_flow_orbit(three, 2.0, 10.0);
    for (const auto& s : orbit.samples) {
        const double x = s.z.real(), y = s.z.imag();
        CHECK(std::abs(three.G(x) + y * y - three.G(2.0)) <= 1e-8);
    }
}

TEST_CASE("supplement flow invariants", "[supplement]") {
    const NormalModel one(1);
    const auto fixed = psi_flow_orbit(one, 1.0, 5.0);
    for (const auto& s : fixed.samples) CHECK(s.z == Complex(1.0, 0.0));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(0.3, 2.0), im(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
        const Complex p(re(rng), im(rng));
        const auto trace = psi_flow_orbit(one, p, 20.0);
        INFO("p=" << p);
        CHECK(trace.hamiltonian_drift <= 1e-9 * 20.0);
    }
    CHECK_THROWS_AS(psi_flow_orbit(one, Complex(-1.0, 0.0), 1.0), DomainError);
    CHECK_THROWS_AS(NormalModel(0.0), DomainError);
    CHECK_THROWS_AS(nu(one, 1.5), DomainError);
}
