#include "curvelaw/phase_flow.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/ode.hpp"
#include "curvelaw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace curvelaw {

namespace {

constexpr double kPolarRadius = 1e-6;

struct CrossingResult {
    double half_period = 0.0;
    double far_crossing = 0.0;
    double period = 0.0;
    State<4> at_return{};
};

// Integrates (x, y, curvature integral, signed area) from a real point and stops at
// the opposite crossing of the real axis, or at the return crossing when full is set.
CrossingResult axis_crossings(const PlanarFlow& flow, double p, double tol, double t_max, bool full) {
    const Complex v0 = flow.field(Complex(p, 0.0));
    if (std::abs(v0) < 1e-13) throw DomainError("point is a fixed point of the flow; no period");
    const double d0 = v0.imag() > 0.0 ? 1.0 : -1.0;
    auto rhs = [&flow](double, const State<4>& y) -> State<4> {
        const Complex z(y[0], y[1]);
        const Complex v = flow.field(z);
        return {v.real(), v.imag(), flow.curvature(z), 0.5 * (y[0] * v.imag() - y[1] * v.real())};
    };
    DormandPrince<4, decltype(rhs)> st(rhs, 0.0, State<4>{p, 0.0, 0.0, 0.0}, 1.0, 0.5 * tol, 0.5 * tol);
    st.set_stop(t_max);
    CrossingResult out;
    bool have_half = false;
    auto im = [](const State<4>& y) { return y[1]; };
    try {
        while (st.step()) {
            if (st.t_old() == 0.0) continue;
            const double ya = st.y_old()[1], yb = st.y()[1];
            if ((ya < 0.0) == (yb < 0.0) || ya == 0.0) continue;
            const double tc = locate_event(st, im);
            const State<4> yc = st.dense(tc);
            const double dir = yb > ya ? 1.0 : -1.0;
            if (!have_half && dir == -d0) {
                out.half_period = tc;
                out.far_crossing = yc[0];
                have_half = true;
                if (!full) return out;
            } else if (have_half && dir == d0 && std::abs(yc[0] - p) < 1e-4 * (1.0 + std::abs(p))) {
                out.period = tc;
                out.at_return = yc;
                return out;
            }
        }
    } catch (const StepUnderflow& e) {
        throw IntegrationError(e.what(), st.t(), Complex(st.y()[0], st.y()[1]));
    }
    throw DomainError("orbit through " + fmt17(p) + " does not return within t = " + fmt17(t_max) +
                      "; it is not a periodic point");
}

} // namespace

Complex PlanarFlow::field(Complex z) const {
    if (z == Complex(0.0, 0.0)) {
        if (regular_at_origin) return {0.0, -1.0};
        throw SingularityError("vector field is singular at the origin for this law");
    }
    const double k = curvature(z);
    return {-z.imag() * k, z.real() * k - 1.0};
}

PlanarFlow radial_flow(const CurvatureModel& model) {
    PlanarFlow flow;
    flow.regular_at_origin = model.sf_limit_at_zero() == 0.0;
    flow.curvature = [model](Complex z) {
        const double r = std::abs(z);
        return model.f(r > 0.0 ? r : std::numeric_limits<double>::min());
    };
    flow.invariant = [model](Complex z) { return hamiltonian(model, z); };
    if (!flow.regular_at_origin) flow.radial_near_origin = [model](double r) { return model.f(r); };
    return flow;
}

Complex vector_field(const CurvatureModel& model, Complex z) { return radial_flow(model).field(z); }

double hamiltonian(const CurvatureModel& model, Complex z) {
    const double r = std::abs(z);
    if (r == 0.0) {
        if (!model.F_at_zero()) throw DomainError("first integral undefined at the origin (F(0+) infinite)");
        return -*model.F_at_zero();
    }
    return z.real() - model.F(r) - r;
}

OrbitTrace integrate_flow(const PlanarFlow& flow, Complex p, double t_end, double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    OrbitTrace trace;
    trace.samples.push_back({0.0, p});
    const double dir = t_end < 0.0 ? -1.0 : 1.0;

    const Complex v0 = flow.field(p);
    if (std::abs(v0) < 1e-14) {
        trace.samples.push_back({t_end, p});
        trace.period = std::nullopt;
        return trace;
    }

    // Poincare section through p, normal to the initial velocity.
    auto section = [&](Complex z) { return std::real((z - p) * std::conj(v0)); };
    const double return_radius = 1e-5 * (1.0 + std::abs(p));

    auto rhs_cart = [&flow](double, const State<2>& y) -> State<2> {
        const Complex v = flow.field(Complex(y[0], y[1]));
        return {v.real(), v.imag()};
    };
    auto rhs_polar = [&flow](double, const State<2>& y) -> State<2> {
        const double rho = y[0], phi = y[1];
        return {-std::sin(phi), flow.radial_near_origin(rho) - std::cos(phi) / rho};
    };

    double t = 0.0;
    Complex z = p;
    bool polar = false;
    auto near_origin = [&](Complex w) {
        return !flow.regular_at_origin && flow.radial_near_origin && std::abs(w) < kPolarRadius;
    };
    while (dir * (t_end - t) > 0.0) {
        try {
            if (!polar) {
                DormandPrince<2, decltype(rhs_cart)> st(rhs_cart, t, State<2>{z.real(), z.imag()}, dir,
                                                        0.5 * tol, 0.5 * tol);
                st.set_stop(t_end);
                while (st.step()) {
                    t = st.t();
                    z = Complex(st.y()[0], st.y()[1]);
                    trace.samples.push_back({t, z});
                    if (dir > 0.0 && !trace.period) {
                        const Complex za(st.y_old()[0], st.y_old()[1]);
                        if (st.t_old() > 0.0 && section(za) < 0.0 && section(z) >= 0.0) {
                            auto g = [&](const State<2>& y) { return section(Complex(y[0], y[1])); };
                            const double tc = locate_event(st, g);
                            const State<2> yc = st.dense(tc);
                            if (std::abs(Complex(yc[0], yc[1]) - p) < return_radius) trace.period = tc;
                        }
                    }
                    if (near_origin(z)) {
                        polar = true;
                        break;
                    }
                }
                if (!polar) break;
            } else {
                DormandPrince<2, decltype(rhs_polar)> st(rhs_polar, t, State<2>{std::abs(z), std::arg(z)}, dir,
                                                         0.5 * tol * kPolarRadius, 0.5 * tol);
                st.set_stop(t_end);
                while (st.step()) {
                    t = st.t();
                    z = std::polar(st.y()[0], st.y()[1]);
                    trace.samples.push_back({t, z});
                    if (st.y()[0] <= 0.0) throw IntegrationError("orbit reached the origin", t, z);
                    if (st.y()[0] > 2.0 * kPolarRadius) {
                        polar = false;
                        break;
                    }
                }
                if (polar) break;
            }
        } catch (const StepUnderflow& e) {
            throw IntegrationError(std::string(e.what()) + " near z = (" + fmt17(z.real()) + ", " +
                                       fmt17(z.imag()) + ")",
                                   t, z);
        }
    }

    if (flow.invariant) {
        try {
            const double h0 = flow.invariant(p);
            double drift = 0.0;
            for (const auto& s : trace.samples) drift = std::max(drift, std::abs(flow.invariant(s.z) - h0));
            trace.hamiltonian_drift = drift;
        } catch (const DomainError&) {
            trace.hamiltonian_drift = std::numeric_limits<double>::quiet_NaN();
        }
    }
    double area = 0.0;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const Complex a = trace.samples[i].z;
        const Complex b = trace.samples[(i + 1) % trace.samples.size()].z;
        area += a.real() * b.imag() - a.imag() * b.real();
    }
    trace.orientation = area > 0.0 ? 1 : (area < 0.0 ? -1 : 0);
    if (dir < 0.0) trace.orientation = -trace.orientation;
    return trace;
}

OrbitTrace integrate_orbit(const CurvatureModel& model, Complex p, double t_end, double tol) {
    return integrate_flow(radial_flow(model), p, t_end, tol);
}

Complex flow_map(const PlanarFlow& flow, Complex p, double t, double tol) {
    if (t == 0.0) return p;
    return integrate_flow(flow, p, t, tol).samples.back().z;
}

PeriodIntegrals period_integrals(const PlanarFlow& flow, double p, double tol, double t_max) {
    const auto c = axis_crossings(flow, p, tol, t_max, true);
    return {c.half_period, c.period, c.at_return[2], c.at_return[3], c.far_crossing};
}

double minimal_period(const CurvatureModel& model, double s, double tol) {
    try {
        return 2.0 * axis_crossings(radial_flow(model), s, tol, 1e4, false).half_period;
    } catch (const DomainError& e) {
        std::string context = " [law " + model.spec();
        if (const auto I = model.interval_If())
            context += ", I_f = ]" + fmt17(I->lower) + ", " + fmt17(I->upper) + "[";
        else
            context += ", not in the structural family";
        throw DomainError(std::string(e.what()) + context + "]");
    }
}

std::optional<double> return_time(const PlanarFlow& flow, Complex p, double tol, double t_max) {
    return integrate_flow(flow, p, t_max, tol).period;
}

FixedPointReport fixed_points(const CurvatureModel& model) {
    FixedPointReport report;
    const double lo = std::log(1e-3), hi = std::log(1e3);
    constexpr int n = 4001;
    auto classify = [&](double z) {
        const double r = std::abs(z);
        const double second = z * model.F_second(r);
        FixedPointKind kind = FixedPointKind::degenerate;
        if (second > 1e-10) kind = FixedPointKind::center;
        if (second < -1e-10) kind = FixedPointKind::saddle;
        return FixedPointInfo{z, kind, second};
    };
    // side = +1 scans z > 0 (s f(s) = 1), side = -1 scans z < 0 (s f(s) = -1).
    for (const double side : {-1.0, 1.0}) {
        auto g = [&](double s) { return side * s * model.f(s) - 1.0; };
        double s_prev = std::exp(lo), g_prev = g(s_prev);
        int zeros = (g_prev == 0.0) ? 1 : 0;
        std::vector<double> roots;
        if (g_prev == 0.0) roots.push_back(s_prev);
        for (int k = 1; k < n; ++k) {
            const double s = std::exp(lo + (hi - lo) * k / (n - 1));
            const double gs = g(s);
            if (gs == 0.0) {
                ++zeros;
                roots.push_back(s);
            } else if (g_prev != 0.0 && (gs < 0.0) != (g_prev < 0.0)) {
                roots.push_back(bisect(g, s_prev, s, 1e-15 * s));
            }
            s_prev = s;
            g_prev = gs;
        }
        if (zeros > n / 2) {
            report.continuum = true;
            continue;
        }
        for (double s : roots) report.points.push_back(classify(side * s));
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const FixedPointInfo& a, const FixedPointInfo& b) { return a.z < b.z; });

    auto status = [](double a) {
        if (a > 1.0) return CenterStatus::center;
        if (a < 1.0) return CenterStatus::not_center;
        return CenterStatus::undetermined;
    };
    report.origin = status(std::abs(model.sf_limit_at_zero()));
    report.infinity = status(std::abs(model.sf_limit_at_infinity()));
    return report;
}

std::string to_string(FixedPointKind kind) {
    switch (kind) {
    case FixedPointKind::center: return "center";
    case FixedPointKind::saddle: return "saddle";
    case FixedPointKind::degenerate: return "degenerate";
    }
    return "unknown";
}

std::string to_string(CenterStatus status) {
    switch (status) {
    case CenterStatus::center: return "center";
    case CenterStatus::not_center: return "not_center";
    case CenterStatus::undetermined: return "undetermined";
    }
    return "unknown";
}

void write_orbit_csv(std::ostream& out, const OrbitTrace& trace) {
    out << "t,re,im\n";
    for (const auto& s : trace.samples) out << fmt17(s.t) << ',' << fmt17(s.z.real()) << ',' << fmt17(s.z.imag()) << '\n';
}

} // namespace curvelaw
