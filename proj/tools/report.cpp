#include "report.hpp"

namespace curvelaw::report {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json points(const std::vector<Complex>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) out.push_back({p.real(), p.imag()});
    return out;
}

} // namespace

Json classification(const ClassificationReport& r, const FixedPointReport& fixed) {
    Json j;
    j["kind"] = "classification";
    j["model"] = r.model;
    j["taxonomy_case"] = r.taxonomy ? Json(to_string(*r.taxonomy)) : Json(nullptr);
    j["circles"] = Json::array();
    for (const auto& c : r.circles)
        j["circles"].push_back({{"radius", c.radius}, {"orientation", c.orientation}, {"any_center", c.any_center}});
    j["noncircular"] = Json::array();
    for (const auto& n : r.noncircular)
        j["noncircular"].push_back(
            {{"s", n.s}, {"n", n.n}, {"residual", n.residual}, {"oracle_residual", n.oracle_residual}});
    j["predicted_count"] = r.predicted_count ? Json(*r.predicted_count) : Json(nullptr);
    j["monotone_certified"] = r.monotone_certified;
    j["degenerate_n"] = r.degenerate_n;
    j["family"] = r.family.empty() ? Json(nullptr) : Json(r.family);
    Json fp = Json::array();
    for (const auto& p : fixed.points)
        fp.push_back({{"z", p.z}, {"type", to_string(p.kind)}, {"second_derivative", p.second_derivative}});
    j["fixed_points"] = {{"points", fp},
                         {"origin", to_string(fixed.origin)},
                         {"infinity", to_string(fixed.infinity)},
                         {"continuum", fixed.continuum}};
    return j;
}

Json winding(const std::string& model, const std::vector<WindingProfile>& profiles) {
    Json j;
    j["kind"] = "winding_profile";
    j["model"] = model;
    j["profiles"] = Json::array();
    for (const auto& p : profiles) {
        Json samples = Json::array();
        for (std::size_t i = 0; i < p.grid.size(); ++i)
            samples.push_back({{"s", p.grid[i]}, {"omega", p.omega[i]}, {"est_error", p.error[i]}});
        j["profiles"].push_back({{"method", to_string(p.method)},
                                 {"limit_at_zero", std::isfinite(p.limit_at_zero) ? Json(p.limit_at_zero) : Json(nullptr)},
                                 {"limit_at_sf", p.limit_at_sf},
                                 {"samples", samples}});
    }
    return j;
}

Json portrait(const std::string& model, const Window& window, int n_levels, const std::vector<Polyline>& lines) {
    Json j;
    j["kind"] = "portrait";
    j["model"] = model;
    j["window"] = {window.x_min, window.x_max, window.y_min, window.y_max};
    j["n_levels"] = n_levels;
    j["polylines"] = Json::array();
    for (const auto& l : lines)
        j["polylines"].push_back({{"level", l.level}, {"closed", l.closed}, {"points", points(l.points)}});
    return j;
}

Json curve(const std::string& model, const std::vector<CurveEntry>& entries) {
    Json j;
    j["kind"] = "curve";
    j["model"] = model;
    j["traces"] = Json::array();
    for (const auto& e : entries) {
        const auto& t = e.trace;
        j["traces"].push_back({{"s", e.s},
                               {"periods", e.periods},
                               {"closed", t.closed},
                               {"simple", t.simple},
                               {"winding_n", t.winding_n ? Json(*t.winding_n) : Json(nullptr)},
                               {"closure_gap", t.closure_gap},
                               {"diameter", t.diameter},
                               {"max_curvature_residual", t.max_curvature_residual},
                               {"ellipse_residual", e.ellipse_residual},
                               {"turning_number", e.turning_number},
                               {"points", points(t.points)}});
    }
    return j;
}

Json certificate(const std::string& suite, std::uint32_t seed, const Certificate& c) {
    Json j;
    j["kind"] = "certificate";
    j["suite"] = suite;
    j["seed"] = seed;
    j["all_passed"] = c.all_passed();
    j["checks"] = Json::array();
    for (const auto& r : c.checks)
        j["checks"].push_back(
            {{"name", r.name}, {"parameters", r.parameters}, {"passed", r.passed}, {"detail", r.detail}});
    return j;
}

Json supplement(const SupplementReport& r) {
    Json j;
    j["kind"] = "supplement";
    j["delta"] = r.delta;
    j["limit_at_zero"] = r.limit_at_zero;
    j["limit_at_one"] = r.limit_at_one;
    j["monotonicity"] = r.monotonicity;
    j["predicted_count"] = r.predicted_count;
    j["family"] = r.family ? Json(*r.family) : Json(nullptr);
    j["ellipse_residual"] = optional_number(r.ellipse_residual);
    j["noncircular"] = Json::array();
    for (const auto& n : r.noncircular)
        j["noncircular"].push_back({{"s", n.s},
                                    {"n", n.n},
                                    {"residual", n.residual},
                                    {"oracle_residual", optional_number(n.oracle_residual)}});
    j["degenerate_n"] = r.degenerate_n;
    Json samples = Json::array();
    for (std::size_t i = 0; i < r.grid.size(); ++i) samples.push_back({{"s", r.grid[i]}, {"nu", r.nu_values[i]}});
    j["nu_profile"] = samples;
    return j;
}

} // namespace curvelaw::report
