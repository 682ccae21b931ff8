#include "curvelaw/errors.hpp"
#include "curvelaw/phase_flow.hpp"
#include "curvelaw/roots.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace curvelaw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("vector field at reference points", "[phase_flow]") {
    const auto quartic = CurvatureModel::monomial(1, 4);
    CHECK(std::abs(vector_field(quartic, 1.0)) < 1e-15);
    const Complex v = vector_field(CurvatureModel::monomial(1, 1), 2.0);
    CHECK_THAT(v.real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(v.imag(), WithinAbs(3.0, 1e-15));
    const Complex w = vector_field(CurvatureModel::example(ExampleId::inverse_square), Complex(0, 1));
    CHECK_THAT(w.real(), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(w.imag(), WithinAbs(-1.0, 1e-15));

    // Regular origin for s f(s) -> 0; unbounded f is singular there.
    CHECK_THAT(vector_field(quartic, 0.0).imag(), WithinAbs(-1.0, 0.0));
    CHECK_THROWS_AS(vector_field(CurvatureModel::example(ExampleId::inverse_square), 0.0), SingularityError);
}

TEST_CASE("first integral at reference points", "[phase_flow]") {
    const auto quartic = CurvatureModel::monomial(1, 4);
    CHECK_THAT(hamiltonian(quartic, 1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(hamiltonian(quartic, -1.0), WithinAbs(-2.0, 1e-15));
}

TEST_CASE("orbit through the origin for f(s) = s lies on 3 Re z = |z|^3", "[phase_flow]") {
    const auto linear = CurvatureModel::example(ExampleId::linear);
    const auto trace = integrate_orbit(linear, 0.0, 6.0);
    REQUIRE(trace.samples.size() > 20);
    double worst = 0.0;
    for (const auto& s : trace.samples) {
        const double r = std::abs(s.z);
        worst = std::max(worst, std::abs(3.0 * s.z.real() - r * r * r));
    }
    CHECK(worst < 1e-8);
    CHECK_THAT(minimal_period(linear, 0.0), WithinAbs(4.541, 1e-3));
}

TEST_CASE("fixed point start gives a constant trace", "[phase_flow]") {
    const auto trace = integrate_orbit(CurvatureModel::monomial(1, 4), 1.0, 17.0);
    for (const auto& s : trace.samples) CHECK(s.z == Complex(1.0, 0.0));
    CHECK(!trace.period);
}

TEST_CASE("homoclinic loop of 1/s^2 satisfies Re z = 1 + log|z|", "[phase_flow]") {
    const auto m = CurvatureModel::example(ExampleId::inverse_square);
    // Left crossing of the loop with the real axis.
    const double x = bisect([](double x) { return x - 1.0 - std::log(-x); }, -0.9, -0.05, 1e-15);
    const auto trace = integrate_orbit(m, x, 4.0, 1e-11);
    double worst = 0.0;
    for (const auto& s : trace.samples)
        worst = std::max(worst, std::abs(s.z.real() - 1.0 - std::log(std::abs(s.z))));
    CHECK(worst < 1e-6);
}

TEST_CASE("period tends to 2 pi / sqrt(f F'') at the center", "[phase_flow]") {
    const auto m = CurvatureModel::monomial(1, 4);
    const double limit = 2.0 * std::numbers::pi / std::sqrt(5.0);
    CHECK_THAT(limit, WithinAbs(2.8099, 1e-4));
    double prev = 0.0;
    for (int k = 2; k <= 4; ++k) {
        const double err = std::abs(minimal_period(m, 1.0 - std::pow(10.0, -k), 1e-12) - limit);
        INFO("k=" << k << " err=" << err);
        CHECK(err < 10.0 * std::pow(10.0, -2 * k));
        // The error is quadratic in the distance to the center.
        if (k > 2) CHECK(prev / err > 50.0);
        prev = err;
    }
}

TEST_CASE("first return time agrees with the half-arc period", "[phase_flow]") {
    const auto m = CurvatureModel::monomial(1, 1);
    const auto t = return_time(radial_flow(m), 0.5);
    REQUIRE(t);
    CHECK_THAT(*t, WithinRel(minimal_period(m, 0.5), 1e-7));
    // Off-axis start on the same orbit.
    const Complex q = flow_map(radial_flow(m), 0.5, 0.37);
    const auto tq = return_time(radial_flow(m), q);
    REQUIRE(tq);
    CHECK_THAT(*tq, WithinRel(*t, 1e-7));
}

TEST_CASE("non-periodic start reports the taxonomy", "[phase_flow]") {
    const auto m = CurvatureModel::example(ExampleId::reciprocal_shifted);
    try {
        (void)minimal_period(m, 0.5);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("I_f") != std::string::npos);
    }
}

TEST_CASE("reflection symmetry, conservation and reversibility", "[phase_flow]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(0.2, 0.9), im(-0.2, 0.2), time(-3.0, 3.0);
    for (const auto& m : {CurvatureModel::monomial(1, 4), CurvatureModel::monomial(1, 1),
                          CurvatureModel::example(ExampleId::linear)}) {
        const auto flow = radial_flow(m);
        for (int trial = 0; trial < 20; ++trial) {
            const Complex z(re(rng), im(rng));
            const double t = time(rng);
            INFO(m.spec() << " z=" << z << " t=" << t);
            const Complex a = std::conj(flow_map(flow, z, t));
            const Complex b = flow_map(flow, std::conj(z), -t);
            CHECK(std::abs(a - b) <= 1e-8);

            const double t_end = std::abs(t) + 1.0;
            const auto trace = integrate_flow(flow, z, t_end);
            CHECK(trace.hamiltonian_drift <= 1e-9 * t_end);

            const Complex back = flow_map(flow, flow_map(flow, z, t_end), -t_end);
            CHECK(std::abs(back - z) <= 1e-7);
        }
    }
}

TEST_CASE("fixed points and their type", "[phase_flow]") {
    const auto inv_sq = fixed_points(CurvatureModel::example(ExampleId::inverse_square));
    REQUIRE(inv_sq.points.size() == 1);
    CHECK_THAT(inv_sq.points[0].z, WithinAbs(1.0, 1e-12));
    CHECK(inv_sq.points[0].kind == FixedPointKind::saddle);
    CHECK(inv_sq.origin == CenterStatus::center);

    const auto affine = fixed_points(CurvatureModel::example(ExampleId::affine_reciprocal));
    REQUIRE(affine.points.size() == 2);
    CHECK_THAT(affine.points[0].z, WithinAbs(-1.0 / 3.0, 1e-12));
    CHECK(affine.points[0].kind == FixedPointKind::saddle);
    CHECK_THAT(affine.points[1].z, WithinAbs(1.0, 1e-12));
    CHECK(affine.points[1].kind == FixedPointKind::center);
    CHECK(affine.origin == CenterStatus::center);

    const auto quartic = fixed_points(CurvatureModel::monomial(1, 4));
    REQUIRE(quartic.points.size() == 1);
    CHECK_THAT(quartic.points[0].z, WithinAbs(1.0, 1e-12));
    CHECK(quartic.points[0].kind == FixedPointKind::center);
    CHECK(quartic.origin == CenterStatus::not_center);

    CHECK(fixed_points(CurvatureModel::example(ExampleId::inverse)).continuum);
}

TEST_CASE("phase portrait level sets", "[phase_flow]") {
    const Window w{-2, 2, -2, 2};
    CHECK(portrait_samples(CurvatureModel::monomial(1, 4), w, 0).empty());

    const auto quartic = portrait_samples(CurvatureModel::monomial(1, 4), w, 12);
    int around_center = 0;
    for (const auto& line : quartic)
        if (line.closed && winding_number(line.points, 1.0) != 0) ++around_center;
    CHECK(around_center >= 3);

    for (const auto& line : portrait_samples(CurvatureModel::example(ExampleId::reciprocal_shifted), w, 12))
        CHECK(!line.closed);
}
