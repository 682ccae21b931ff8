#pragma once

#include "curvelaw/classification.hpp"
#include "curvelaw/curve_geometry.hpp"
#include "curvelaw/phase_flow.hpp"
#include "curvelaw/positivity.hpp"
#include "curvelaw/supplement.hpp"
#include "curvelaw/winding.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace curvelaw::report {

using Json = nlohmann::ordered_json;

struct CurveEntry {
    double s;
    int periods;
    CurveTrace trace;
    double ellipse_residual;
    double turning_number;
};

[[nodiscard]] Json classification(const ClassificationReport& r, const FixedPointReport& fixed);
[[nodiscard]] Json winding(const std::string& model, const std::vector<WindingProfile>& profiles);
[[nodiscard]] Json portrait(const std::string& model, const Window& window, int n_levels,
                            const std::vector<Polyline>& lines);
[[nodiscard]] Json curve(const std::string& model, const std::vector<CurveEntry>& entries);
[[nodiscard]] Json certificate(const std::string& suite, std::uint32_t seed, const Certificate& c);
[[nodiscard]] Json supplement(const SupplementReport& r);

} // namespace curvelaw::report
