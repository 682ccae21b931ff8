#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"
#include "curvelaw/phase_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace curvelaw {

namespace {

struct Segment {
    long a, b;  // edge ids
    Complex pa, pb;
};

} // namespace

std::vector<Polyline> contour_field(const std::function<double(Complex)>& field, const Window& window,
                                    const std::vector<double>& levels, int resolution) {
    if (resolution < 2) throw DomainError("contour resolution must be at least 2");
    const int n = resolution;
    const double dx = (window.x_max - window.x_min) / (n - 1);
    const double dy = (window.y_max - window.y_min) / (n - 1);
    auto node = [&](int i, int j) { return Complex(window.x_min + i * dx, window.y_min + j * dy); };

    std::vector<double> values(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v;
            try {
                v = field(node(i, j));
            } catch (const DomainError&) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            values[static_cast<std::size_t>(j) * n + i] = v;
        }
    auto val = [&](int i, int j) { return values[static_cast<std::size_t>(j) * n + i]; };

    // Edge ids: horizontal edge (i,j)-(i+1,j) -> 2(jn+i), vertical (i,j)-(i,j+1) -> 2(jn+i)+1.
    auto h_edge = [&](int i, int j) { return 2L * (static_cast<long>(j) * n + i); };
    auto v_edge = [&](int i, int j) { return 2L * (static_cast<long>(j) * n + i) + 1; };

    std::vector<Polyline> result;
    for (double level : levels) {
        auto cross = [&](Complex p0, double v0, Complex p1, double v1) {
            const double t = (level - v0) / (v1 - v0);
            return p0 + t * (p1 - p0);
        };
        std::vector<Segment> segs;
        for (int j = 0; j + 1 < n; ++j) {
            for (int i = 0; i + 1 < n; ++i) {
                const double v00 = val(i, j), v10 = val(i + 1, j), v11 = val(i + 1, j + 1), v01 = val(i, j + 1);
                if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) || !std::isfinite(v01)) continue;
                const int code = (v00 > level ? 1 : 0) | (v10 > level ? 2 : 0) | (v11 > level ? 4 : 0) |
                                 (v01 > level ? 8 : 0);
                if (code == 0 || code == 15) continue;
                // Edge crossing points: bottom, right, top, left.
                const long eb = h_edge(i, j), er = v_edge(i + 1, j), et = h_edge(i, j + 1), el = v_edge(i, j);
                auto pb = [&] { return cross(node(i, j), v00, node(i + 1, j), v10); };
                auto pr = [&] { return cross(node(i + 1, j), v10, node(i + 1, j + 1), v11); };
                auto pt = [&] { return cross(node(i, j + 1), v01, node(i + 1, j + 1), v11); };
                auto pl = [&] { return cross(node(i, j), v00, node(i, j + 1), v01); };
                auto add = [&](long a, Complex ca, long b, Complex cb) { segs.push_back({a, b, ca, cb}); };
                const double center = 0.25 * (v00 + v10 + v11 + v01);
                switch (code) {
                case 1: case 14: add(el, pl(), eb, pb()); break;
                case 2: case 13: add(eb, pb(), er, pr()); break;
                case 3: case 12: add(el, pl(), er, pr()); break;
                case 4: case 11: add(er, pr(), et, pt()); break;
                case 6: case 9: add(eb, pb(), et, pt()); break;
                case 7: case 8: add(el, pl(), et, pt()); break;
                case 5:
                    if (center > level) {
                        add(el, pl(), et, pt());
                        add(eb, pb(), er, pr());
                    } else {
                        add(el, pl(), eb, pb());
                        add(er, pr(), et, pt());
                    }
                    break;
                case 10:
                    if (center > level) {
                        add(el, pl(), eb, pb());
                        add(er, pr(), et, pt());
                    } else {
                        add(el, pl(), et, pt());
                        add(eb, pb(), er, pr());
                    }
                    break;
                default: break;
                }
            }
        }

        // Link segments sharing edge ids into polylines.
        std::map<long, std::vector<std::size_t>> by_edge;
        std::map<long, Complex> edge_point;
        for (std::size_t k = 0; k < segs.size(); ++k) {
            by_edge[segs[k].a].push_back(k);
            by_edge[segs[k].b].push_back(k);
            edge_point[segs[k].a] = segs[k].pa;
            edge_point[segs[k].b] = segs[k].pb;
        }
        std::vector<bool> used(segs.size(), false);
        auto walk = [&](long start_edge, std::size_t first) {
            Polyline line;
            line.level = level;
            line.points.push_back(edge_point[start_edge]);
            long edge = start_edge;
            std::size_t seg = first;
            while (true) {
                used[seg] = true;
                const long next = (segs[seg].a == edge) ? segs[seg].b : segs[seg].a;
                line.points.push_back(edge_point[next]);
                edge = next;
                if (edge == start_edge) {
                    line.closed = true;
                    break;
                }
                std::size_t cont = segs.size();
                for (std::size_t cand : by_edge[edge])
                    if (!used[cand]) cont = cand;
                if (cont == segs.size()) break;
                seg = cont;
            }
            return line;
        };
        for (const auto& [edge, list] : by_edge)
            if (list.size() == 1 && !used[list[0]]) result.push_back(walk(edge, list[0]));
        for (std::size_t k = 0; k < segs.size(); ++k)
            if (!used[k]) result.push_back(walk(segs[k].a, k));
    }
    return result;
}

std::vector<Polyline> portrait_samples(const CurvatureModel& model, const Window& window, int n_levels,
                                       int resolution) {
    if (n_levels <= 0) return {};
    auto field = [&model](Complex z) { return hamiltonian(model, z); };
    std::vector<double> values;
    const int n = resolution;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const Complex z(window.x_min + i * (window.x_max - window.x_min) / (n - 1),
                            window.y_min + j * (window.y_max - window.y_min) / (n - 1));
            try {
                const double h = field(z);
                if (std::isfinite(h)) values.push_back(h);
            } catch (const DomainError&) {
            }
        }
    if (values.empty()) return {};
    std::sort(values.begin(), values.end());
    if (!(values.back() > values.front())) return {};
    // Equal-area levels: each band covers the same share of the window.
    std::vector<double> levels;
    for (int k = 0; k < n_levels; ++k) {
        const double level = values[static_cast<std::size_t>((k + 0.5) / n_levels * (values.size() - 1))];
        if (levels.empty() || level > levels.back()) levels.push_back(level);
    }
    return contour_field(field, window, levels, resolution);
}

int winding_number(const std::vector<Complex>& loop, Complex point) {
    double total = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Complex a = loop[i] - point, b = loop[(i + 1) % loop.size()] - point;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

void write_portrait_csv(std::ostream& out, const std::vector<Polyline>& lines) {
    out << "polyline,level,closed,re,im\n";
    for (std::size_t k = 0; k < lines.size(); ++k)
        for (const auto& p : lines[k].points)
            out << k << ',' << fmt17(lines[k].level) << ',' << (lines[k].closed ? 1 : 0) << ',' << fmt17(p.real())
                << ',' << fmt17(p.imag()) << '\n';
}

std::string portrait_svg(const std::vector<Polyline>& lines, const Window& window) {
    const double w = window.x_max - window.x_min, h = window.y_max - window.y_min;
    const double scale = 500.0 / std::max(w, h);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt17(w * scale) << "\" height=\""
        << fmt17(h * scale) << "\" viewBox=\"0 0 " << fmt17(w * scale) << ' ' << fmt17(h * scale) << "\">\n";
    for (const auto& line : lines) {
        if (line.points.size() < 2) continue;
        out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" d=\"";
        for (std::size_t i = 0; i < line.points.size(); ++i) {
            const double x = (line.points[i].real() - window.x_min) * scale;
            const double y = (window.y_max - line.points[i].imag()) * scale;
            out << (i == 0 ? 'M' : 'L') << fmt17(x) << ' ' << fmt17(y) << ' ';
        }
        if (line.closed) out << 'Z';
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace curvelaw
