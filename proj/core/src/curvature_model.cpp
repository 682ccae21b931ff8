#include "curvelaw/curvature_model.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/roots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace curvelaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

template <class T>
T law_f(const LawKind& kind, const T& s) {
    using std::exp;
    using std::pow;
    if (const auto* m = std::get_if<Monomial>(&kind)) return m->a * pow(s, m->delta);
    switch (std::get<NamedExample>(kind).id) {
    case ExampleId::linear: return s;
    case ExampleId::reciprocal_shifted: return 1.0 / (1.0 + s);
    case ExampleId::inverse_square: return 1.0 / (s * s);
    case ExampleId::inverse: return 1.0 / s;
    case ExampleId::quartic_ratio: return (1.0 + 3.0 * s * s * s * s) / (s + 3.0 * s * s * s);
    case ExampleId::affine_reciprocal: return 3.0 - 2.0 / s;
    case ExampleId::exp_ratio: return exp(-s) / s;
    case ExampleId::inverse_cubic: return 1.0 / (s + s * s * s);
    case ExampleId::shifted_inverse_square: return (s + 2.0) / (s * s);
    case ExampleId::shifted_inverse_cube: return (s * s + 2.0) / (s * s * s);
    }
    return T(0.0);
}

// Normalized potential: F(s_f) = 0 where s_f exists, F(1) = 0 otherwise.
template <class T>
T law_F(const LawKind& kind, const T& s) {
    using std::atan;
    using std::exp;
    using std::log;
    using std::pow;
    if (const auto* m = std::get_if<Monomial>(&kind)) {
        const double d = m->delta;
        if (d > -1.0) {
            const double lambda = std::pow(m->a, -1.0 / (d + 1.0));
            const T x = s / lambda;
            return lambda * (pow(x, d + 2.0) - (d + 2.0) * x + (d + 1.0)) / (d + 2.0);
        }
        if (d == -1.0) return (m->a - 1.0) * (s - 1.0);
        if (d == -2.0) return m->a * log(s) - s + 1.0;
        return m->a * (pow(s, d + 2.0) - 1.0) / (d + 2.0) - (s - 1.0);
    }
    const double pi = std::numbers::pi;
    const double r3 = std::sqrt(3.0);
    switch (std::get<NamedExample>(kind).id) {
    case ExampleId::linear: return (s - 1.0) * (s - 1.0) * (s + 2.0) / 3.0;
    case ExampleId::reciprocal_shifted: return -log(0.5 * (1.0 + s));
    case ExampleId::inverse_square: return log(s) - s + 1.0;
    case ExampleId::inverse: return T(0.0) * s;
    case ExampleId::quartic_ratio:
        return s * s * s / 3.0 - 4.0 * s / 3.0 + (4.0 / (3.0 * r3)) * atan(r3 * s) + 1.0 -
               4.0 * pi / (9.0 * r3);
    case ExampleId::affine_reciprocal: return 1.5 * (s - 1.0) * (s - 1.0);
    case ExampleId::exp_ratio: return -exp(-s) - s + 1.0 + std::exp(-1.0);
    case ExampleId::inverse_cubic: return atan(s) - s + 1.0 - pi / 4.0;
    case ExampleId::shifted_inverse_square: return 2.0 * log(s);
    case ExampleId::shifted_inverse_cube: return 2.0 - 2.0 / s;
    }
    return T(0.0);
}

struct StaticFacts {
    std::optional<int> eps;
    Membership membership;
    double sf_zero;
    double sf_inf;
    std::optional<double> F_zero;
    bool bounded_zero;
};

StaticFacts monomial_facts(const Monomial& m) {
    const double d = m.delta;
    const double a = m.a;
    StaticFacts facts{};
    if (d > -1.0) {
        facts.eps = 1;
        facts.sf_zero = 0.0;
        facts.sf_inf = inf;
        facts.membership = (d == 0.0) ? Membership::none : Membership::family_star;
        const double lambda = std::pow(a, -1.0 / (d + 1.0));
        facts.F_zero = lambda * (d + 1.0) / (d + 2.0);
        facts.bounded_zero = d >= 0.0;
    } else if (d == -1.0) {
        facts.eps = std::nullopt;
        facts.sf_zero = a;
        facts.sf_inf = a;
        facts.membership = Membership::none;
        facts.F_zero = a - 1.0;
        facts.bounded_zero = false;
    } else {
        facts.eps = -1;
        facts.sf_zero = inf;
        facts.sf_inf = 0.0;
        facts.membership = Membership::family;
        if (d > -2.0) facts.F_zero = -(a / (d + 2.0)) + 1.0;
        facts.bounded_zero = false;
    }
    return facts;
}

StaticFacts example_facts(ExampleId id) {
    const double pi = std::numbers::pi;
    const double r3 = std::sqrt(3.0);
    switch (id) {
    case ExampleId::linear: return {1, Membership::family_star, 0.0, inf, 2.0 / 3.0, true};
    case ExampleId::reciprocal_shifted: return {1, Membership::family, 0.0, 1.0, std::log(2.0), true};
    case ExampleId::inverse_square: return {-1, Membership::family, inf, 0.0, std::nullopt, false};
    case ExampleId::inverse: return {std::nullopt, Membership::none, 1.0, 1.0, 0.0, false};
    case ExampleId::quartic_ratio:
        return {std::nullopt, Membership::none, 1.0, inf, 1.0 - 4.0 * pi / (9.0 * r3), false};
    case ExampleId::affine_reciprocal: return {1, Membership::none, -2.0, inf, 1.5, false};
    case ExampleId::exp_ratio: return {-1, Membership::family, 1.0, 0.0, std::exp(-1.0), false};
    case ExampleId::inverse_cubic: return {-1, Membership::family, 1.0, 0.0, 1.0 - pi / 4.0, false};
    case ExampleId::shifted_inverse_square: return {-1, Membership::family, inf, 1.0, std::nullopt, false};
    case ExampleId::shifted_inverse_cube: return {-1, Membership::family, inf, 1.0, std::nullopt, false};
    }
    throw DomainError("unknown example");
}

struct NameEntry {
    ExampleId id;
    const char* name;
};

constexpr NameEntry kNames[] = {
    {ExampleId::linear, "linear"},
    {ExampleId::reciprocal_shifted, "reciprocal_shifted"},
    {ExampleId::inverse_square, "inverse_square"},
    {ExampleId::inverse, "inverse"},
    {ExampleId::quartic_ratio, "quartic_ratio"},
    {ExampleId::affine_reciprocal, "affine_reciprocal"},
    {ExampleId::exp_ratio, "exp_ratio"},
    {ExampleId::inverse_cubic, "inverse_cubic"},
    {ExampleId::shifted_inverse_square, "shifted_inverse_square"},
    {ExampleId::shifted_inverse_cube, "shifted_inverse_cube"},
};

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw DomainError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_positive(double s) {
    if (!(s > 0.0)) throw DomainError("curvature law evaluated at non-positive radius");
}

} // namespace

std::string example_name(ExampleId id) {
    for (const auto& e : kNames)
        if (e.id == id) return e.name;
    return "unknown";
}

std::optional<ExampleId> example_from_name(std::string_view name) {
    for (const auto& e : kNames)
        if (name == e.name) return e.id;
    return std::nullopt;
}

const std::vector<ExampleId>& all_examples() {
    static const std::vector<ExampleId> ids = [] {
        std::vector<ExampleId> v;
        for (const auto& e : kNames) v.push_back(e.id);
        return v;
    }();
    return ids;
}

CurvatureModel::CurvatureModel(LawKind kind, std::string spec) : kind_(kind), spec_(std::move(spec)) {
    StaticFacts facts{};
    if (const auto* m = std::get_if<Monomial>(&kind_)) {
        if (!(m->a > 0.0) || !std::isfinite(m->a)) throw DomainError("monomial scale a must be positive");
        if (!std::isfinite(m->delta)) throw DomainError("monomial exponent must be finite");
        facts = monomial_facts(*m);
        if (spec_.empty()) spec_ = "monomial:a=" + format_double(m->a) + ",delta=" + format_double(m->delta);
    } else {
        const auto id = std::get<NamedExample>(kind_).id;
        facts = example_facts(id);
        if (spec_.empty()) spec_ = "example:" + example_name(id);
    }
    eps_ = facts.eps;
    membership_ = facts.membership;
    sf_zero_ = facts.sf_zero;
    sf_inf_ = facts.sf_inf;
    F_zero_ = facts.F_zero;
    bounded_zero_ = facts.bounded_zero;

    if (!eps_) return;
    if (const auto* m = std::get_if<Monomial>(&kind_)) {
        if (m->delta > -1.0) s_f_ = std::pow(m->a, -1.0 / (m->delta + 1.0));
        return;
    }
    // s f(s) - eps is monotone because F'' has constant sign; eps must lie strictly between its limits.
    const double e = static_cast<double>(*eps_);
    if (!(std::min(sf_zero_, sf_inf_) < e && e < std::max(sf_zero_, sf_inf_))) return;
    auto g = [&](double s) { return s * law_f(kind_, s) - e; };
    const auto bracket = doubling_bracket(g, 1.0, 60);
    if (!bracket) return;
    auto [lo, hi] = *bracket;
    s_f_ = (lo == hi) ? lo : bisect(g, lo, hi, 1e-14 * hi, 400);
}

CurvatureModel CurvatureModel::monomial(double a, double delta) { return CurvatureModel(Monomial{a, delta}); }

CurvatureModel CurvatureModel::example(ExampleId id) { return CurvatureModel(NamedExample{id}); }

CurvatureModel CurvatureModel::parse(std::string_view spec) {
    const std::string original(spec);
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw DomainError("model spec needs a kind prefix: '" + original + "'");
    const auto head = spec.substr(0, colon);
    auto rest = spec.substr(colon + 1);
    if (head == "example") {
        const auto id = example_from_name(rest);
        if (!id) throw DomainError("unknown example id '" + std::string(rest) + "'");
        return CurvatureModel(NamedExample{*id}, original);
    }
    if (head != "monomial") throw DomainError("unknown model kind '" + std::string(head) + "'");
    Monomial m{1.0, 0.0};
    bool have_delta = false;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        rest = (comma == std::string_view::npos) ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw DomainError("expected key=value in '" + original + "'");
        const auto key = item.substr(0, eq);
        const auto value = item.substr(eq + 1);
        if (key == "a") {
            m.a = parse_double(value, "a");
        } else if (key == "delta") {
            m.delta = parse_double(value, "delta");
            have_delta = true;
        } else {
            throw DomainError("unknown monomial parameter '" + std::string(key) + "'");
        }
    }
    if (!have_delta) throw DomainError("monomial spec requires delta");
    return CurvatureModel(m, original);
}

double CurvatureModel::f(double s) const {
    require_positive(s);
    return law_f(kind_, s);
}

double CurvatureModel::f_prime(double s) const {
    require_positive(s);
    return law_f(kind_, Jet<1>::variable(s)).c[1];
}

double CurvatureModel::F(double s) const {
    require_positive(s);
    return law_F(kind_, s);
}

double CurvatureModel::F_prime(double s) const { return s * f(s) - 1.0; }

double CurvatureModel::F_second(double s) const { return f(s) + s * f_prime(s); }

template <std::size_t N>
Jet<N> CurvatureModel::f_jet(double s) const {
    require_positive(s);
    return law_f(kind_, Jet<N>::variable(s));
}

template <std::size_t N>
Jet<N> CurvatureModel::F_jet(double s) const {
    require_positive(s);
    return law_F(kind_, Jet<N>::variable(s));
}

template Jet<1> CurvatureModel::f_jet<1>(double) const;
template Jet<2> CurvatureModel::f_jet<2>(double) const;
template Jet<3> CurvatureModel::f_jet<3>(double) const;
template Jet<4> CurvatureModel::f_jet<4>(double) const;
template Jet<8> CurvatureModel::f_jet<8>(double) const;
template Jet<16> CurvatureModel::f_jet<16>(double) const;
template Jet<1> CurvatureModel::F_jet<1>(double) const;
template Jet<2> CurvatureModel::F_jet<2>(double) const;
template Jet<3> CurvatureModel::F_jet<3>(double) const;
template Jet<4> CurvatureModel::F_jet<4>(double) const;
template Jet<8> CurvatureModel::F_jet<8>(double) const;
template Jet<16> CurvatureModel::F_jet<16>(double) const;

std::array<double, 3> CurvatureModel::higher_derivatives_at_fixed_radius() const {
    if (!s_f_) throw DomainError("law has no circle radius s_f");
    if (const auto* m = std::get_if<Monomial>(&kind_); m && m->a == 1.0) {
        // F_k = prod_{l=2}^{k} (delta + 3 - l)
        const double d = m->delta;
        return {d + 1.0, (d + 1.0) * d, (d + 1.0) * d * (d - 1.0)};
    }
    const auto j = F_jet<4>(*s_f_);
    return {j.derivative(2), j.derivative(3), j.derivative(4)};
}

PotentialEval CurvatureModel::potential(double s) const {
    PotentialEval p;
    p.s = s;
    p.F = F(s);
    p.F1 = F_prime(s);
    if (s_f_) p.F2plus = higher_derivatives_at_fixed_radius();
    return p;
}

std::optional<ExtendedInterval> CurvatureModel::interval_If() const {
    if (!eps_) return std::nullopt;
    const double e = static_cast<double>(*eps_);
    double lo = e * sf_zero_, hi = e * sf_inf_;
    if (lo > hi) std::swap(lo, hi);
    return ExtendedInterval{lo, hi};
}

} // namespace curvelaw
