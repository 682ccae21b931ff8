#include "report.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace curvelaw;
using report::Json;

constexpr int kExitDomain = 1;
constexpr int kExitCertification = 2;
constexpr int kExitUsage = 64;

struct Tolerances {
    double quad = 1e-8;
    double ode = 1e-10;
    double root = 1e-12;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Window parse_window(const std::string& text) {
    std::vector<double> v;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
        throw DomainError("window must be xmin,xmax,ymin,ymax with xmin < xmax and ymin < ymax");
    return {v[0], v[1], v[2], v[3]};
}

// Subcommand state lives here so the callbacks can run after parsing.
struct Options {
    Tolerances tol;
    std::string model;
    std::string json_path;
    int points = 200;
    int grid = 50;
    std::string method = "quad";
    std::string out_path;
    std::string window = "-2,2,-2,2";
    int levels = 20;
    int resolution = 241;
    std::string svg_path;
    std::string csv_path;
    std::vector<double> s_values;
    std::vector<int> n_values;
    double theta0 = 0.0;
    int samples = 10000;
    std::string suite = "all";
    std::uint32_t seed = 20240601;
    double delta = 0.0;
    int nu_grid = 100;
    bool supplement_classify = false;
};

int run_classify(const Options& o) {
    const auto model = CurvatureModel::parse(o.model);
    const auto r = classify(model, o.points, o.tol.quad, o.tol.root);
    const auto j = report::classification(r, fixed_points(model));
    write_json(o.json_path, j);
    if (!o.json_path.empty() && o.json_path != "-")
        std::cout << r.model << ": " << r.circles.size() << " circle(s), " << r.noncircular.size()
                  << " non-circular Jordan record(s)\n";
    return 0;
}

int run_winding(const Options& o) {
    const auto model = CurvatureModel::parse(o.model);
    const auto grid = profile_grid(model, o.grid);
    std::vector<WindingProfile> profiles;
    if (o.method == "quad" || o.method == "both")
        profiles.push_back(winding_profile(model, grid, WindingMethod::quadrature, o.tol.quad));
    if (o.method == "ode" || o.method == "both")
        profiles.push_back(winding_profile(model, grid, WindingMethod::ode, o.tol.ode));
    std::ostringstream csv;
    write_profile_csv(csv, profiles);
    write_text(o.out_path, csv.str());
    if (!o.json_path.empty()) write_json(o.json_path, report::winding(model.spec(), profiles));
    return 0;
}

int run_portrait(const Options& o) {
    const auto model = CurvatureModel::parse(o.model);
    const auto window = parse_window(o.window);
    const auto lines = portrait_samples(model, window, o.levels, o.resolution);
    if (!o.svg_path.empty()) write_text(o.svg_path, portrait_svg(lines, window));
    if (!o.csv_path.empty()) {
        std::ostringstream csv;
        write_portrait_csv(csv, lines);
        write_text(o.csv_path, csv.str());
    }
    if (!o.json_path.empty()) write_json(o.json_path, report::portrait(model.spec(), window, o.levels, lines));
    if (o.svg_path.empty() && o.csv_path.empty() && o.json_path.empty()) {
        std::ostringstream csv;
        write_portrait_csv(csv, lines);
        std::cout << csv.str();
    }
    return 0;
}

int run_curve(const Options& o) {
    const auto model = CurvatureModel::parse(o.model);
    if (o.s_values.empty()) throw DomainError("at least one --s value is required");
    if (!o.n_values.empty() && o.n_values.size() != 1 && o.n_values.size() != o.s_values.size())
        throw DomainError("give one --n for all curves or one per --s");
    std::vector<report::CurveEntry> entries;
    std::vector<CurveTrace> traces;
    for (std::size_t i = 0; i < o.s_values.size(); ++i) {
        const int periods = o.n_values.empty() ? 1 : o.n_values.size() == 1 ? o.n_values[0] : o.n_values[i];
        auto trace = reconstruct(model, o.s_values[i], o.theta0, 2 * periods, o.samples, o.tol.ode);
        double ellipse = 0.0, turning = 0.0;
        if (trace.closed) {
            ellipse = ellipse_residual(trace);
            turning = turning_number(trace);
        }
        std::cout << "s=" << fmt17(o.s_values[i]) << " periods=" << periods << " closed=" << trace.closed
                  << " simple=" << trace.simple << " gap=" << fmt17(trace.closure_gap) << "\n";
        entries.push_back({o.s_values[i], periods, trace, ellipse, turning});
        traces.push_back(std::move(trace));
    }
    if (!o.svg_path.empty()) write_text(o.svg_path, curves_svg(traces));
    if (!o.csv_path.empty()) {
        std::ostringstream csv;
        write_curve_csv(csv, traces.front());
        write_text(o.csv_path, csv.str());
    }
    if (!o.json_path.empty()) write_json(o.json_path, report::curve(model.spec(), entries));
    return 0;
}

int run_verify(const Options& o) {
    const auto c = run_suite(suite_from_name(o.suite), o.seed);
    for (const auto& r : c.checks)
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << r.parameters << "] " << r.detail << "\n";
    if (!o.json_path.empty()) write_json(o.json_path, report::certificate(o.suite, o.seed, c));
    return c.all_passed() ? 0 : kExitCertification;
}

int run_supplement(const Options& o) {
    auto r = classify_supplement(o.delta, o.nu_grid);
    auto j = report::supplement(r);
    j["classified"] = o.supplement_classify;
    if (!o.supplement_classify) {
        j["noncircular"] = Json::array();
        j["degenerate_n"] = Json::array();
    }
    write_json(o.json_path, j);
    if (!o.json_path.empty() && o.json_path != "-")
        std::cout << "delta=" << fmt17(o.delta) << " nu(0+)=" << fmt17(r.limit_at_zero)
                  << " nu(1-)=" << fmt17(r.limit_at_one) << " " << r.monotonicity << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed curves with curvature prescribed by the distance to the origin"};
    app.require_subcommand(1);
    Options o;

    auto add_tolerances = [&o](CLI::App* sub) {
        sub->add_option("--quad-tol", o.tol.quad, "Quadrature tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--ode-tol", o.tol.ode, "ODE tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--root-tol", o.tol.root, "Root tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    };
    const std::string model_help = "Law: monomial:a=<float>,delta=<float> or example:<id>";

    auto* classify_cmd = app.add_subcommand("classify", "Circles and non-circular Jordan solutions of a law");
    classify_cmd->add_option("--model", o.model, model_help)->required();
    classify_cmd->add_option("--json", o.json_path, "Report path (stdout when omitted)");
    classify_cmd->add_option("--points", o.points, "Winding profile points")->check(CLI::Range(8, 100000))->capture_default_str();
    add_tolerances(classify_cmd);

    auto* winding_cmd = app.add_subcommand("winding", "Net winding profile on ]0, s_f[");
    winding_cmd->add_option("--model", o.model, model_help)->required();
    winding_cmd->add_option("--grid", o.grid, "Number of grid points")->check(CLI::Range(4, 1000000))->capture_default_str();
    winding_cmd->add_option("--method", o.method, "quad, ode or both")
        ->check(CLI::IsMember({"quad", "ode", "both"}))
        ->capture_default_str();
    winding_cmd->add_option("--out", o.out_path, "CSV path (stdout when omitted)");
    winding_cmd->add_option("--json", o.json_path, "Optional JSON report path");
    add_tolerances(winding_cmd);

    auto* portrait_cmd = app.add_subcommand("portrait", "Level sets of the first integral");
    portrait_cmd->add_option("--model", o.model, model_help)->required();
    portrait_cmd->add_option("--window", o.window, "xmin,xmax,ymin,ymax")->capture_default_str();
    portrait_cmd->add_option("--levels", o.levels, "Number of levels")->check(CLI::NonNegativeNumber)->capture_default_str();
    portrait_cmd->add_option("--resolution", o.resolution, "Grid points per axis")
        ->check(CLI::Range(3, 4001))
        ->capture_default_str();
    portrait_cmd->add_option("--svg", o.svg_path, "SVG path");
    portrait_cmd->add_option("--csv", o.csv_path, "CSV path");
    portrait_cmd->add_option("--json", o.json_path, "JSON report path");

    auto* curve_cmd = app.add_subcommand("curve", "Reconstruct solution curves from orbits through real points");
    curve_cmd->add_option("--model", o.model, model_help)->required();
    curve_cmd->add_option("--s", o.s_values, "Start point on the real axis (repeat for overlays)")->required();
    curve_cmd->add_option("--n", o.n_values, "Number of orbit periods (one value, or one per --s)")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_option("--theta0", o.theta0, "Initial phase")->capture_default_str();
    curve_cmd->add_option("--samples", o.samples, "Samples per curve")->check(CLI::Range(16, 10000000))->capture_default_str();
    curve_cmd->add_option("--svg", o.svg_path, "SVG path");
    curve_cmd->add_option("--csv", o.csv_path, "CSV path (first curve)");
    curve_cmd->add_option("--json", o.json_path, "JSON report path");
    add_tolerances(curve_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Exact and numerical positivity certificates");
    verify_cmd->add_option("--suite", o.suite, "p, q, p51, gautschi, binomial or all")
        ->check(CLI::IsMember({"p", "q", "p51", "gautschi", "binomial", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
    verify_cmd->add_option("--json", o.json_path, "Certificate path");

    auto* supplement_cmd = app.add_subcommand("supplement", "Period function for curvature |Re(z conj(n))|^delta");
    supplement_cmd->add_option("--delta", o.delta, "Exponent delta > 0")->required();
    supplement_cmd->add_option("--nu-grid", o.nu_grid, "Profile points")->check(CLI::Range(4, 1000000))->capture_default_str();
    supplement_cmd->add_flag("--classify", o.supplement_classify, "Search for non-circular Jordan solutions");
    supplement_cmd->add_option("--json", o.json_path, "Report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(o);
        if (winding_cmd->parsed()) return run_winding(o);
        if (portrait_cmd->parsed()) return run_portrait(o);
        if (curve_cmd->parsed()) return run_curve(o);
        if (verify_cmd->parsed()) return run_verify(o);
        if (supplement_cmd->parsed()) return run_supplement(o);
    } catch (const CertificationError& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const IntegrationError& e) {
        std::cerr << "integration failed: " << e.what() << " at t = " << fmt17(e.last_time) << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
