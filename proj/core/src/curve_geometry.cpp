#include "curvelaw/curve_geometry.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/ode.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace curvelaw {

namespace {

constexpr double kLattice = 1e-12;  // resolution of the exact intersection predicates

__extension__ using Wide = __int128;

struct LatticePoint {
    std::int64_t x, y;
};

int orientation(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    const Wide v = static_cast<Wide>(b.x - a.x) * (c.y - a.y) - static_cast<Wide>(b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
}

bool on_segment(const LatticePoint& a, const LatticePoint& b, const LatticePoint& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c, const LatticePoint& d) {
    const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

// Vertices of the closed polygon: the final sample duplicates the first and is dropped.
std::vector<Complex> polygon(const CurveTrace& trace) {
    if (!trace.closed) throw DomainError("trace is not closed");
    std::vector<Complex> v(trace.points.begin(), trace.points.end() - 1);
    if (v.size() < 3) throw DomainError("closed trace needs at least 4 samples");
    return v;
}

double diameter_of(const std::vector<Complex>& pts) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

double menger(Complex a, Complex b, Complex c) {
    const Complex u = b - a, v = c - b, w = c - a;
    const double cross = u.real() * v.imag() - u.imag() * v.real();
    return 2.0 * cross / (std::abs(u) * std::abs(v) * std::abs(w));
}

} // namespace

CurveTrace reconstruct_flow(const PlanarFlow& flow, Complex p, double theta0, double t_end, int samples, double tol) {
    if (p == Complex(0.0, 0.0)) throw DomainError("the orbit through the origin does not correspond to a curve");
    if (!(t_end > 0.0)) throw DomainError("reconstruction length must be positive");
    if (samples < 2) throw DomainError("reconstruction needs at least 2 samples");

    auto rhs = [&flow](double, const State<4>& y) -> State<4> {
        const Complex z(y[0], y[1]);
        if (z == Complex(0.0, 0.0)) throw SingularityError("orbit reached the origin during reconstruction");
        const Complex v = flow.field(z);
        const Complex dl = 1.0 / std::conj(z);
        return {v.real(), v.imag(), dl.real(), dl.imag()};
    };
    DormandPrince<4, decltype(rhs)> st(rhs, 0.0, State<4>{p.real(), p.imag(), 0.0, 0.0}, 1.0, 0.5 * tol, 0.5 * tol);
    st.set_stop(t_end);

    CurveTrace trace;
    const Complex base = std::abs(p) * std::polar(1.0, theta0);
    auto record = [&](double t, const State<4>& y) {
        const Complex L(y[2], y[3]);
        trace.t.push_back(t);
        trace.orbit.emplace_back(y[0], y[1]);
        trace.points.push_back(base * std::exp(Complex(0.0, 1.0) * L));
        trace.omega_star.push_back(y[2] / std::numbers::pi);
    };
    record(0.0, st.y());
    int next = 1;
    try {
        while (next < samples && st.step()) {
            while (next < samples) {
                const double ts = (next == samples - 1) ? t_end : t_end * next / (samples - 1.0);
                if (ts > st.t()) break;
                record(ts, ts == st.t() ? st.y() : st.dense(ts));
                ++next;
            }
        }
    } catch (const StepUnderflow& e) {
        throw IntegrationError(e.what(), st.t(), Complex(st.y()[0], st.y()[1]));
    }
    if (next < samples) throw IntegrationError("reconstruction stopped early", st.t(), Complex(st.y()[0], st.y()[1]));

    trace.diameter = diameter_of(trace.points);
    trace.closure_gap = std::abs(trace.points.back() - trace.points.front());
    return trace;
}

CurveTrace reconstruct(const CurvatureModel& model, double s, double theta0, int n_halfperiods, int samples,
                       double tol) {
    if (n_halfperiods < 1) throw DomainError("need at least one half-period");
    const auto flow = radial_flow(model);
    double half;
    if (std::abs(flow.field(Complex(s, 0.0))) < 1e-13)
        half = std::numbers::pi * std::abs(s);  // fixed point: the curve is a circle of radius |s|
    else
        half = 0.5 * minimal_period(model, s, 1e-12);
    auto trace = reconstruct_flow(flow, Complex(s, 0.0), theta0, n_halfperiods * half, samples, tol);
    annotate(trace, [&model](Complex z) { return model.f(std::abs(z)); });
    if (trace.closed && n_halfperiods % 2 == 0) trace.winding_n = n_halfperiods / 2;
    return trace;
}

bool is_closed(const CurveTrace& trace, double rel_gap) {
    if (trace.points.size() < 2) return false;
    return trace.closure_gap <= rel_gap * trace.diameter;
}

bool simplicity_check(const CurveTrace& trace) {
    const auto v = polygon(trace);
    const std::size_t m = v.size();

    double xmin = v[0].real(), ymin = v[0].imag(), longest = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xmin = std::min(xmin, v[i].real());
        ymin = std::min(ymin, v[i].imag());
        longest = std::max(longest, std::abs(v[(i + 1) % m] - v[i]));
    }
    std::vector<LatticePoint> q(m);
    for (std::size_t i = 0; i < m; ++i)
        q[i] = {std::llround((v[i].real() - xmin) / kLattice), std::llround((v[i].imag() - ymin) / kLattice)};

    // Uniform grid buckets of side 2 * longest segment.
    const double cell = std::max(2.0 * longest, 1e-9);
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets;
    auto key = [](std::int64_t cx, std::int64_t cy) { return (cx << 32) ^ (cy & 0xffffffff); };
    for (std::size_t i = 0; i < m; ++i) {
        const Complex a = v[i], b = v[(i + 1) % m];
        const auto x0 = static_cast<std::int64_t>(std::floor((std::min(a.real(), b.real()) - xmin) / cell));
        const auto x1 = static_cast<std::int64_t>(std::floor((std::max(a.real(), b.real()) - xmin) / cell));
        const auto y0 = static_cast<std::int64_t>(std::floor((std::min(a.imag(), b.imag()) - ymin) / cell));
        const auto y1 = static_cast<std::int64_t>(std::floor((std::max(a.imag(), b.imag()) - ymin) / cell));
        for (auto cx = x0; cx <= x1; ++cx)
            for (auto cy = y0; cy <= y1; ++cy) buckets[key(cx, cy)].push_back(i);
    }
    for (const auto& [k, segs] : buckets) {
        for (std::size_t a = 0; a < segs.size(); ++a) {
            for (std::size_t b = a + 1; b < segs.size(); ++b) {
                const std::size_t i = std::min(segs[a], segs[b]), j = std::max(segs[a], segs[b]);
                if (j == i + 1 || (i == 0 && j == m - 1)) continue;
                if (segments_intersect(q[i], q[(i + 1) % m], q[j], q[(j + 1) % m])) return false;
            }
        }
    }
    return true;
}

double curvature_residual(const std::function<double(Complex)>& curvature, const CurveTrace& trace) {
    if (trace.points.size() < 5) throw DomainError("curvature residual needs at least 5 samples");
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < trace.points.size(); ++k) {
        const double est = menger(trace.points[k - 1], trace.points[k], trace.points[k + 1]);
        if (!std::isfinite(est)) throw DomainError("degenerate sample spacing in curvature estimate");
        worst = std::max(worst, std::abs(est - curvature(trace.orbit[k])));
    }
    return worst;
}

double curvature_residual(const CurvatureModel& model, const CurveTrace& trace) {
    if (trace.points.size() < 5) throw DomainError("curvature residual needs at least 5 samples");
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < trace.points.size(); ++k) {
        const double est = menger(trace.points[k - 1], trace.points[k], trace.points[k + 1]);
        if (!std::isfinite(est)) throw DomainError("degenerate sample spacing in curvature estimate");
        worst = std::max(worst, std::abs(est - model.f(std::abs(trace.points[k]))));
    }
    return worst;
}

double ellipse_residual(const CurveTrace& trace) {
    const auto& pts = trace.points;
    if (pts.size() < 6) throw DomainError("conic fit needs at least 6 points");
    Complex mean(0.0, 0.0);
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    double spread = 0.0;
    for (const auto& p : pts) spread = std::max(spread, std::abs(p - mean));
    if (!(spread > 0.0)) throw DomainError("degenerate point set");

    Eigen::MatrixXd design(static_cast<Eigen::Index>(pts.size()), 6);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Complex p = (pts[i] - mean) / spread;
        const double x = p.real(), y = p.imag();
        design.row(static_cast<Eigen::Index>(i)) << x * x, x * y, y * y, x, y, 1.0;
    }
    const Eigen::MatrixXd scatter = design.transpose() * design;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    const Eigen::VectorXd c = solver.eigenvectors().col(0);

    double sum = 0.0;
    std::vector<Complex> scaled;
    scaled.reserve(pts.size());
    for (const auto& raw : pts) {
        const Complex p = (raw - mean) / spread;
        scaled.push_back(p);
        const double x = p.real(), y = p.imag();
        const double value = c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
        const double gx = 2.0 * c[0] * x + c[1] * y + c[3], gy = c[1] * x + 2.0 * c[2] * y + c[4];
        const double g2 = gx * gx + gy * gy;
        sum += g2 > 0.0 ? value * value / g2 : 0.0;
    }
    return std::sqrt(sum / static_cast<double>(pts.size())) / diameter_of(scaled);
}

double turning_number(const CurveTrace& trace) {
    const auto v = polygon(trace);
    const std::size_t m = v.size();
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Complex e0 = v[(i + 1) % m] - v[i], e1 = v[(i + 2) % m] - v[(i + 1) % m];
        total += std::arg(e1 / e0);
    }
    return total / (2.0 * std::numbers::pi);
}

double z_correspondence_error(const CurveTrace& trace) {
    const auto& c = trace.points;
    if (c.size() < 5) throw DomainError("z correspondence needs at least 5 samples");
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < c.size(); ++k) {
        const Complex tangent = -c[k + 2] + 8.0 * c[k + 1] - 8.0 * c[k - 1] + c[k - 2];
        const Complex unit = tangent / std::abs(tangent);
        const Complex z = Complex(0.0, -1.0) * std::conj(c[k]) * unit;
        worst = std::max(worst, std::abs(z - trace.orbit[k]));
    }
    return worst;
}

void annotate(CurveTrace& trace, const std::function<double(Complex)>& curvature) {
    trace.closed = is_closed(trace);
    trace.simple = trace.closed && simplicity_check(trace);
    trace.max_curvature_residual = curvature_residual(curvature, trace);
}

void write_curve_csv(std::ostream& out, const CurveTrace& trace) {
    if (trace.points.empty()) throw DomainError("empty trace");
    out << "t,re,im\n";
    for (std::size_t k = 0; k < trace.points.size(); ++k)
        out << fmt17(trace.t[k]) << ',' << fmt17(trace.points[k].real()) << ',' << fmt17(trace.points[k].imag())
            << '\n';
}

void write_curve_json(std::ostream& out, const CurveTrace& trace) {
    if (trace.points.empty()) throw DomainError("empty trace");
    auto list = [&](auto&& get) {
        out << '[';
        for (std::size_t k = 0; k < trace.points.size(); ++k) out << (k ? "," : "") << fmt17(get(k));
        out << ']';
    };
    out << "{\"closed\":" << (trace.closed ? "true" : "false") << ",\"simple\":" << (trace.simple ? "true" : "false")
        << ",\"closure_gap\":" << fmt17(trace.closure_gap) << ",\"diameter\":" << fmt17(trace.diameter)
        << ",\"max_curvature_residual\":" << fmt17(trace.max_curvature_residual) << ",\"t\":";
    list([&](std::size_t k) { return trace.t[k]; });
    out << ",\"re\":";
    list([&](std::size_t k) { return trace.points[k].real(); });
    out << ",\"im\":";
    list([&](std::size_t k) { return trace.points[k].imag(); });
    out << "}\n";
}

std::string curves_svg(const std::vector<CurveTrace>& traces) {
    std::vector<Complex> all;
    for (const auto& tr : traces) {
        if (tr.points.empty()) throw DomainError("empty trace");
        all.insert(all.end(), tr.points.begin(), tr.points.end());
    }
    if (all.empty()) throw DomainError("no traces to draw");
    double xmin = all[0].real(), xmax = xmin, ymin = all[0].imag(), ymax = ymin;
    for (const auto& p : all) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-12});
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    const double scale = 500.0 / std::max(xmax - xmin, ymax - ymin);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt17((xmax - xmin) * scale) << "\" height=\""
        << fmt17((ymax - ymin) * scale) << "\">\n";
    for (const auto& tr : traces) {
        out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"";
        const std::size_t n = tr.closed ? tr.points.size() - 1 : tr.points.size();
        for (std::size_t k = 0; k < n; ++k)
            out << (k == 0 ? 'M' : 'L') << fmt17((tr.points[k].real() - xmin) * scale) << ' '
                << fmt17((ymax - tr.points[k].imag()) * scale) << ' ';
        if (tr.closed) out << 'Z';
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace curvelaw
