#include "curvelaw/classification.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/phase_flow.hpp"
#include "curvelaw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvelaw {

namespace {

// Consecutive profile values must differ by this multiple of their error estimates.
constexpr double kMonotoneMargin = 10.0;
// 1/n this close to an endpoint limit counts as a boundary coincidence.
constexpr double kDegenerateGap = 1e-9;

ClassificationReport generic_report(const CurvatureModel& model, int profile_points, double quad_tol,
                                    double root_tol) {
    ClassificationReport r;
    r.model = model.spec();
    if (model.in_family()) r.taxonomy = taxonomy(model);
    const auto fp = fixed_points(model);
    if (fp.continuum) r.family = "every circle centered at the origin with s f(s) = +-1";
    for (const auto& p : fp.points) r.circles.push_back({std::abs(p.z), p.z > 0.0 ? 1 : -1, false});

    const bool has_center = model.fixed_radius() && model.eps() == 1;
    const bool searchable = r.taxonomy ? *r.taxonomy == TaxonomyCase::one_in_If : has_center;
    if (searchable && has_center) {
        WindingProfile profile;
        if (r.taxonomy) {
            profile = winding_profile(model, profile_grid(model, profile_points), WindingMethod::quadrature, quad_tol);
        } else {
            // Outside the family the segment may contain twisted orbits; keep the valid samples only.
            profile.model = model.spec();
            profile.limit_at_zero = std::numeric_limits<double>::quiet_NaN();
            profile.limit_at_sf = omega_limit_at_sf(model).value;
            for (double s : profile_grid(model, profile_points)) {
                try {
                    const auto q = omega_quadrature(model, s, quad_tol);
                    profile.grid.push_back(s);
                    profile.omega.push_back(q.value);
                    profile.error.push_back(q.error);
                } catch (const DomainError&) {
                }
            }
        }
        auto found = jordan_set(model, profile, root_tol, quad_tol);
        r.noncircular = std::move(found.records);
        r.monotone_certified = found.monotone_certified;
        r.degenerate_n = std::move(found.degenerate_n);
    }
    return r;
}

} // namespace

TaxonomyCase taxonomy(const CurvatureModel& model) {
    const auto I = model.interval_If();
    if (!model.in_family() || !I)
        throw DomainError("taxonomy needs a law in the structural family (f f' F'' never zero); law " + model.spec());
    if (I->contains(1.0)) return TaxonomyCase::one_in_If;
    if (I->contains(-1.0)) return TaxonomyCase::minus_one_in_If;
    if (I->lower >= -1.0 && I->upper <= 1.0) return TaxonomyCase::If_inside_unit;
    return TaxonomyCase::If_disjoint_unit;
}

JordanSearch jordan_set(const CurvatureModel& model, const WindingProfile& profile, double root_tol,
                        double quad_tol) {
    const auto& g = profile.grid;
    const auto& w = profile.omega;
    if (g.size() < 2 || g.size() != w.size()) throw DomainError("winding profile needs at least two samples");
    const double sf = *model.fixed_radius();

    JordanSearch out;
    bool increasing = true, decreasing = true;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double margin = kMonotoneMargin * (profile.error[i] + profile.error[i + 1]);
        if (!(w[i + 1] - w[i] > margin)) increasing = false;
        if (!(w[i] - w[i + 1] > margin)) decreasing = false;
    }
    out.monotone_certified = increasing || decreasing;

    // Extended samples with the endpoint limits; the end brackets use interior abscissae.
    std::vector<double> xs{1e-10 * sf}, ys{profile.limit_at_zero};
    xs.insert(xs.end(), g.begin(), g.end());
    ys.insert(ys.end(), w.begin(), w.end());
    xs.push_back(sf * (1.0 - 1e-9));
    ys.push_back(profile.limit_at_sf);

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double y : ys) {
        if (std::isnan(y)) continue;
        if (std::isfinite(y)) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        } else {
            hi = y;
        }
    }
    if (!(lo > 0.0)) return out;
    const int n_min = std::max(2, static_cast<int>(std::ceil(1.0 / hi)));
    const int n_max = static_cast<int>(std::floor(1.0 / lo));

    auto omega = [&](double s) { return omega_quadrature(model, s, quad_tol).value; };
    for (int n = n_min; n <= n_max; ++n) {
        const double target = 1.0 / n;
        if (std::abs(target - profile.limit_at_zero) < kDegenerateGap ||
            std::abs(target - profile.limit_at_sf) < kDegenerateGap) {
            out.degenerate_n.push_back(n);
            continue;
        }
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double a = ys[i] - target, b = ys[i + 1] - target;
            if (std::isnan(a) || std::isnan(b) || (std::isinf(a) && std::isinf(b))) continue;
            if ((a < 0.0) == (b < 0.0)) continue;
            const double root = bisect([&](double s) { return omega(s) - target; }, xs[i], xs[i + 1], root_tol);
            const double residual = std::abs(omega(root) - target);
            const double oracle = std::abs(omega_ode(model, root) - target);
            out.records.push_back({root, n, residual, oracle});
        }
    }
    std::sort(out.records.begin(), out.records.end(),
              [](const JordanRecord& x, const JordanRecord& y) { return x.s < y.s; });
    return out;
}

ClassificationReport classify(const CurvatureModel& model, int profile_points, double quad_tol, double root_tol) {
    if (const auto* m = std::get_if<Monomial>(&model.kind())) {
        auto r = classify_monomial(m->a, m->delta, profile_points, quad_tol, root_tol);
        r.model = model.spec();
        return r;
    }
    return generic_report(model, profile_points, quad_tol, root_tol);
}

ClassificationReport classify_monomial(double a, double delta, int profile_points, double quad_tol,
                                       double root_tol) {
    if (!(a > 0.0)) throw DomainError("monomial scale a must be positive, got " + fmt17(a));
    const auto model = CurvatureModel::monomial(a, delta);
    ClassificationReport r;
    r.model = model.spec();
    if (model.in_family()) r.taxonomy = taxonomy(model);

    if (delta == -1.0) {
        if (a == 1.0) r.family = "every circle centered at the origin";
        return r;
    }
    if (delta == 0.0) {
        r.circles.push_back({1.0 / a, 1, true});
        r.family = "every circle of radius 1/a";
        r.predicted_count = 0;
        return r;
    }

    const double scale = std::pow(a, -1.0 / (delta + 1.0));
    r.circles.push_back({scale, 1, false});
    if (delta < -1.0) return r;

    r.predicted_count = predicted_count(delta);
    const auto unit = CurvatureModel::monomial(1.0, delta);
    const auto profile =
        winding_profile(unit, profile_grid(unit, profile_points), WindingMethod::quadrature, quad_tol);
    auto found = jordan_set(unit, profile, root_tol, quad_tol);
    for (auto& rec : found.records) rec.s *= scale;
    r.noncircular = std::move(found.records);
    r.monotone_certified = found.monotone_certified;
    r.degenerate_n = std::move(found.degenerate_n);
    return r;
}

int predicted_count(double delta) {
    if (!(delta > 3.0)) return 0;
    return std::max(static_cast<int>(std::ceil(std::sqrt(delta + 1.0))) - 2, 0);
}

std::string to_string(TaxonomyCase c) {
    switch (c) {
    case TaxonomyCase::If_disjoint_unit: return "If_disjoint_unit";
    case TaxonomyCase::If_inside_unit: return "If_inside_unit";
    case TaxonomyCase::minus_one_in_If: return "minus_one_in_If";
    case TaxonomyCase::one_in_If: return "one_in_If";
    }
    return "unknown";
}

} // namespace curvelaw
