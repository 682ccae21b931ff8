#include "curvelaw/positivity.hpp"

#include "curvelaw/errors.hpp"
#include "curvelaw/format.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace curvelaw {

namespace {

using Poly = IntegerPolynomial;

Poly lin(std::int64_t c0, std::int64_t c1) { return Poly::linear(c0, c1); }
Poly cst(std::int64_t c) { return Poly::constant(c); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

// Coefficient (in eps) and exponent (in eps) of one exponential term.
struct SymbolicTerm {
    Poly coefficient;
    Poly exponent;
};

// p(eps, t) term by term; terms 4 and 10 of the printed list are read as exponentials.
const std::vector<SymbolicTerm>& p_terms() {
    static const std::vector<SymbolicTerm> terms = [] {
        const Poly e = lin(0, 1);
        const Poly e2 = lin(2, 1), e21 = lin(-1, 2);
        return std::vector<SymbolicTerm>{
            {cst(6) * e, lin(-1, 4)},
            {cst(-4) * e2 * e21, lin(0, 3)},
            {cst(9) * e * lin(-2, 1), lin(-1, 3)},
            {cst(3) * e * e, lin(-3, 3)},
            {cst(12) * e2 * e21, lin(0, 2)},
            {cst(-6) * e * lin(-3, 5), lin(-1, 2)},
            {cst(-18) * e * e, lin(-3, 2)},
            {cst(-12) * e2 * e21, lin(0, 1)},
            {cst(3) * e * e2 * lin(-1, 4), lin(-1, 1)},
            {cst(-3) * e * e * lin(-5, 4), lin(-3, 1)},
            {cst(4) * e2 * e21, cst(0)},
        };
    }();
    return terms;
}

const std::vector<SymbolicTerm>& q_terms() {
    static const std::vector<SymbolicTerm> terms = [] {
        std::vector<SymbolicTerm> out;
        for (const auto& t : p_terms()) out.push_back({t.coefficient, lin(-1, 4) - t.exponent});
        return out;
    }();
    return terms;
}

ExpPolynomial instantiate(const std::vector<SymbolicTerm>& terms, const Rational& eps) {
    std::vector<ExpTerm> out;
    for (const auto& t : terms) out.push_back({t.coefficient(eps), t.exponent(eps)});
    return ExpPolynomial(std::move(out));
}

// C(nu) * B(nu)^(n + offset).
struct PowerTerm {
    Poly coefficient;
    Poly base;
    unsigned offset;
};

Poly sum_of_powers(const std::vector<PowerTerm>& terms, unsigned n) {
    Poly acc;
    for (const auto& t : terms) acc = acc + t.coefficient * t.base.pow(n + t.offset);
    return acc;
}

// Printed closed form for p_n in nu = eps - 5.
const std::vector<PowerTerm>& printed_p_terms() {
    static const std::vector<PowerTerm> terms = [] {
        const Poly n5 = lin(5, 1), n7 = lin(7, 1), n29 = lin(9, 2);
        return std::vector<PowerTerm>{
            {cst(6) * n5, lin(19, 4), 4},
            {cst(-4) * n7 * n29, lin(15, 3), 4},
            {cst(9) * n5 * lin(3, 1), lin(14, 3), 4},
            {cst(3) * n5 * n5, lin(12, 3), 4},
            {cst(12) * n7 * n29, lin(10, 2), 4},
            {cst(-6) * n5 * lin(22, 5), lin(9, 2), 4},
            {cst(-18) * n5 * n5, lin(7, 2), 4},
            {cst(-12) * n7 * n29, lin(5, 1), 4},
            {cst(3) * n5 * n7 * lin(19, 4), lin(4, 1), 4},
            {cst(-3) * n5 * n5 * lin(15, 4), lin(2, 1), 4},
        };
    }();
    return terms;
}

const std::vector<PowerTerm>& printed_q_terms() {
    static const std::vector<PowerTerm> terms = [] {
        const Poly n5 = lin(5, 1), n7 = lin(7, 1), n29 = lin(9, 2);
        return std::vector<PowerTerm>{
            {cst(4) * n7 * n29, lin(19, 4), 4},
            {cst(-3) * n5 * n5 * lin(15, 4), lin(17, 3), 4},
            {n7 * lin(19, 4), lin(15, 3), 5},
            {cst(-12) * n7 * n29, lin(14, 3), 4},
            {cst(-18) * n5 * n5, lin(12, 2), 4},
            {cst(-3) * lin(22, 5), lin(10, 2), 5},
            {cst(12) * n7, lin(9, 2), 5},
            {cst(3) * n5 * n5, lin(7, 1), 4},
            {cst(9) * lin(3, 1), lin(5, 1), 5},
            {cst(-4) * n7 * n29, lin(4, 1), 4},
        };
    }();
    return terms;
}

Poly from_terms(const std::vector<SymbolicTerm>& terms, unsigned n) {
    Poly acc;
    for (const auto& t : terms) {
        const Poly c = t.coefficient.shifted(5), b = t.exponent.shifted(5);
        acc = acc + c * b.pow(n + 4);
    }
    return acc;
}

// lhs_c * lhs_b^(n + lhs_k) >= rhs_c * rhs_b^(n + rhs_k).
struct Domination {
    Poly lhs_c, lhs_b;
    unsigned lhs_k;
    Poly rhs_c, rhs_b;
    unsigned rhs_k;
};

std::vector<Domination> dominations(char which) {
    const Poly n5 = lin(5, 1), n7 = lin(7, 1), n29 = lin(9, 2);
    if (which == 'p')
        return {
            {cst(3) * n5, lin(19, 4), 4, cst(2) * n7 * n29, lin(15, 3), 4},
            {cst(3) * lin(3, 1), lin(14, 3), 4, cst(2) * lin(22, 5), lin(9, 2), 4},
            {cst(1), lin(12, 3), 4, cst(6), lin(7, 2), 4},
        };
    const Poly d = n7 * n29;
    return {
        {d, lin(19, 4), 4, cst(3) * n5 * n5 * lin(15, 4), lin(17, 3), 4},
        {cst(1), lin(19, 4), 4, cst(12), lin(14, 3), 4},
        {d, lin(19, 4), 4, cst(18) * n5 * n5, lin(12, 2), 4},
        {d, lin(19, 4), 4, cst(3) * lin(22, 5), lin(10, 2), 5},
    };
}

bool dominations_hold(const std::vector<Domination>& ds, unsigned n, std::string* failure = nullptr) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& d = ds[i];
        for (int nu = 0; nu <= 29; ++nu) {
            const BigInt x = nu;
            const BigInt lhs = d.lhs_c(x) * boost::multiprecision::pow(d.lhs_b(x), n + d.lhs_k);
            const BigInt rhs = d.rhs_c(x) * boost::multiprecision::pow(d.rhs_b(x), n + d.rhs_k);
            if (lhs < rhs) {
                if (failure) *failure = "inequality " + std::to_string(i + 1) + " fails at nu = " + std::to_string(nu);
                return false;
            }
        }
    }
    return true;
}

char require_which(char which) {
    if (which != 'p' && which != 'q') throw DomainError("polynomial family must be 'p' or 'q'");
    return which;
}

std::string range_text(unsigned first, unsigned last) {
    return "n=" + std::to_string(first) + ".." + std::to_string(last);
}

} // namespace

// ---------------------------------------------------------------- IntegerPolynomial

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { trim(); }

IntegerPolynomial IntegerPolynomial::linear(std::int64_t c0, std::int64_t c1) {
    return IntegerPolynomial({BigInt(c0), BigInt(c1)});
}

IntegerPolynomial IntegerPolynomial::constant(std::int64_t c) { return IntegerPolynomial({BigInt(c)}); }

void IntegerPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntegerPolynomial IntegerPolynomial::operator+(const IntegerPolynomial& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::operator-(const IntegerPolynomial& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::operator*(const IntegerPolynomial& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::pow(unsigned k) const {
    IntegerPolynomial result = constant(1), base = *this;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

IntegerPolynomial IntegerPolynomial::shifted(std::int64_t shift) const {
    IntegerPolynomial acc;
    const IntegerPolynomial x = linear(shift, 1);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + IntegerPolynomial({c_[i]});
    return acc;
}

BigInt IntegerPolynomial::operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Rational IntegerPolynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(c_[i]);
    return acc;
}

IntegerPolynomial IntegerPolynomial::divided_by_x_minus_one(unsigned k) const {
    std::vector<BigInt> cur = c_;
    for (unsigned step = 0; step < k; ++step) {
        if (cur.size() < 2) throw CertificationError("polynomial degree too small for the division");
        std::vector<BigInt> q(cur.size() - 1);
        BigInt carry = 0;
        for (std::size_t i = cur.size() - 1; i >= 1; --i) {
            carry += cur[i];
            q[i - 1] = carry;
        }
        if (carry + cur[0] != 0) throw CertificationError("division by (x - 1) leaves a remainder");
        cur = std::move(q);
    }
    return IntegerPolynomial(std::move(cur));
}

std::string IntegerPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) out << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0) out << '-';
        const BigInt mag = c_[i] < 0 ? BigInt(-c_[i]) : c_[i];
        if (mag != 1 || i == 0) out << mag;
        if (i >= 1) out << (mag != 1 ? "*" : "") << "x";
        if (i >= 2) out << '^' << i;
        first = false;
    }
    return out.str();
}

// ---------------------------------------------------------------- ExpPolynomial

ExpPolynomial::ExpPolynomial(std::vector<ExpTerm> terms) {
    std::map<Rational, Rational, std::greater<>> merged;
    for (auto& t : terms) merged[t.exponent] += t.coefficient;
    for (auto& [b, a] : merged)
        if (a != 0) terms_.push_back({a, b});
}

double ExpPolynomial::operator()(double t) const {
    // Neumaier summation.
    double sum = 0.0, comp = 0.0;
    for (const auto& term : terms_) {
        const double x = to_double(term.coefficient) * std::exp(to_double(term.exponent) * t);
        const double s = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
        sum = s;
    }
    return sum + comp;
}

double ExpPolynomial::magnitude(double t) const {
    double m = 0.0;
    for (const auto& term : terms_) m += std::abs(to_double(term.coefficient)) * std::exp(to_double(term.exponent) * t);
    return m;
}

Rational ExpPolynomial::derivative_at_zero(unsigned k) const {
    Rational acc = 0;
    for (const auto& term : terms_) {
        Rational p = 1;
        for (unsigned i = 0; i < k; ++i) p *= term.exponent;
        acc += term.coefficient * p;
    }
    return acc;
}

ExpPolynomial ExpPolynomial::reflected(const Rational& shift) const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) out.push_back({t.coefficient, shift - t.exponent});
    return ExpPolynomial(std::move(out));
}

ExpPolynomial ExpPolynomial::operator-(const ExpPolynomial& o) const {
    std::vector<ExpTerm> out = terms_;
    for (const auto& t : o.terms_) out.push_back({-t.coefficient, t.exponent});
    return ExpPolynomial(std::move(out));
}

ExpPolynomial ExpPolynomial::scaled(const Rational& factor) const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) out.push_back({t.coefficient * factor, t.exponent});
    return ExpPolynomial(std::move(out));
}

int sigma(const ExpPolynomial& g) {
    int changes = 0;
    const auto& t = g.terms();
    for (std::size_t i = 1; i < t.size(); ++i)
        if ((t[i - 1].coefficient < 0) != (t[i].coefficient < 0)) ++changes;
    return changes;
}

ExpPolynomial p_function(const Rational& eps) { return instantiate(p_terms(), eps); }

ExpPolynomial q_function(const Rational& eps) { return instantiate(q_terms(), eps); }

ExpPolynomial p_hat_function(const Rational& e) {
    return ExpPolynomial({
        {2 * e, 4 * e - 1},
        {-(2 * e - 1) * (3 * e - 1), 3 * e},
        {2 * e * (3 * e - 1), 3 * e - 1},
        {-2 * (3 * e - 1), 2 * e},
        {e - 1, e},
    });
}

double eval_p(const Rational& eps, double t) { return p_function(eps)(t); }

IntegerPolynomial taylor_p(unsigned n) { return sum_of_powers(printed_p_terms(), n); }
IntegerPolynomial taylor_q(unsigned n) { return sum_of_powers(printed_q_terms(), n); }
IntegerPolynomial taylor_p_from_terms(unsigned n) { return from_terms(p_terms(), n); }
IntegerPolynomial taylor_q_from_terms(unsigned n) { return from_terms(q_terms(), n); }

PrintedExpansion printed_p0() {
    const Poly common = cst(24) * lin(5, 1).pow(3) * lin(7, 1);
    return {Poly({63000, 235800, 195360, 71664, 13464, 1272, 48}), common * Poly({3, 9, 2})};
}

PrintedExpansion printed_p1() {
    const Poly common = cst(24) * lin(5, 1).pow(3) * lin(7, 1);
    return {Poly({2898000, 8893800, 8270760, 3734784, 939840, 135240, 10440, 336}),
            common * Poly({138, 321, 127, 14})};
}

PrintedExpansion printed_q1() {
    const Poly common = cst(24) * lin(5, 1).pow(3) * lin(7, 1);
    return {Poly({3087000, 14767200, 15004440, 6980496, 1772520, 254880, 19560, 624}),
            common * Poly({147, 594, 243, 26})};
}

IntegerPolynomial p51_printed() {
    return Poly({252, 1008, 1395, 540, -435, -1164, -1281, -870, -15, 540, 807, 798, 600, 300, 120, 30});
}

IntegerPolynomial p51_derived() {
    // p(5, t) as a polynomial in x = e^t; every exponent is a non-negative integer at eps = 5.
    const auto g = p_function(Rational(5));
    std::vector<BigInt> coeffs;
    for (const auto& t : g.terms()) {
        if (denominator(t.exponent) != 1 || denominator(t.coefficient) != 1 || t.exponent < 0)
            throw CertificationError("p(5, .) is not an integer polynomial in e^t");
        const auto k = static_cast<std::size_t>(numerator(t.exponent));
        if (coeffs.size() <= k) coeffs.resize(k + 1);
        coeffs[k] += numerator(t.coefficient);
    }
    return IntegerPolynomial(std::move(coeffs)).divided_by_x_minus_one(4);
}

Rational p51_bound(const Rational& s) {
    const Rational lo = s < 1 ? s : Rational(1), hi = s > 1 ? s : Rational(1);
    auto pw = [](const Rational& x, int k) {
        Rational r = 1;
        for (int i = 0; i < k; ++i) r *= x;
        return r;
    };
    return 15 * (213 * pw(s, 9) * pw(lo, 6) - 251 * pw(s, 4) * pw(hi, 4) + 213 * pw(lo, 3));
}

// ---------------------------------------------------------------- checks

bool Certificate::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult certify_positive_coeffs(char which, unsigned first, unsigned last) {
    require_which(which);
    CheckResult r{std::string("positive_coefficients_") + which, range_text(first, last), true, ""};
    for (unsigned n = first; n <= last; ++n) {
        const auto poly = which == 'p' ? taylor_p(n) : taylor_q(n);
        if (poly.degree() != static_cast<int>(n) + 6) {
            r.passed = false;
            r.detail = which + std::to_string(n) + " has degree " + std::to_string(poly.degree());
            return r;
        }
        const auto& c = poly.coefficients();
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] <= 0) {
                r.passed = false;
                r.detail = "non-positive coefficient in " + std::string(1, which) + std::to_string(n) + " at degree " +
                           std::to_string(k);
                return r;
            }
        }
    }
    r.detail = "all coefficients positive";
    return r;
}

CheckResult check_closed_forms(char which, unsigned first, unsigned last) {
    require_which(which);
    CheckResult r{std::string("closed_form_matches_terms_") + which, range_text(first, last), true, ""};
    for (unsigned n = first; n <= last; ++n) {
        const bool same = which == 'p' ? taylor_p(n) == taylor_p_from_terms(n) : taylor_q(n) == taylor_q_from_terms(n);
        if (!same) {
            r.passed = false;
            r.detail = "closed form differs from the exponential terms at n = " + std::to_string(n);
            return r;
        }
    }
    r.detail = "printed closed forms equal the derivatives of the exponential sum";
    return r;
}

CheckResult check_printed_expansions() {
    CheckResult r{"printed_expansions", "p0, p1, q1", true, ""};
    const std::pair<const char*, std::pair<PrintedExpansion, Poly>> cases[] = {
        {"p0", {printed_p0(), taylor_p(0)}},
        {"p1", {printed_p1(), taylor_p(1)}},
        {"q1", {printed_q1(), taylor_q(1)}},
        {"q0", {printed_p0(), taylor_q(0)}},
    };
    for (const auto& [name, data] : cases) {
        const auto& [printed, computed] = data;
        if (!(printed.expanded == computed) || !(printed.factored == computed)) {
            r.passed = false;
            r.detail += std::string(name) + " mismatch: computed " + computed.to_string() + "; ";
        }
    }
    if (r.passed) r.detail = "expanded and factored forms match exactly";
    return r;
}

CheckResult check_domination(char which, unsigned threshold) {
    require_which(which);
    CheckResult r{std::string("domination_") + which, "n=" + std::to_string(threshold) + ", nu=0..29", true, ""};
    const auto ds = dominations(which);
    std::string failure;
    if (!dominations_hold(ds, threshold, &failure)) {
        r.passed = false;
        r.detail = failure;
        return r;
    }
    // Each left base is at least the right base on [0, 29], so the inequalities persist for larger n.
    for (const auto& d : ds) {
        for (const BigInt& x : {BigInt(0), BigInt(29)}) {
            if (d.lhs_b(x) < d.rhs_b(x)) {
                r.passed = false;
                r.detail = "left base smaller than right base; domination does not propagate in n";
                return r;
            }
        }
    }
    r.detail = "holds at the threshold and propagates to all larger n; onset n = " +
               std::to_string(domination_onset(which));
    return r;
}

unsigned domination_onset(char which, unsigned search_limit) {
    const auto ds = dominations(require_which(which));
    for (unsigned n = 0; n <= search_limit; ++n)
        if (dominations_hold(ds, n)) return n;
    throw CertificationError("domination inequalities never hold below the search limit");
}

CheckResult check_p_grid() {
    CheckResult r{"p_grid_nonnegative", "eps=5..34 step 0.25, t=-2..2 step 0.01", true, ""};
    double worst = std::numeric_limits<double>::infinity();
    std::string where;
    for (int k = 0; k <= 116; ++k) {
        const Rational eps(20 + k, 4);
        const auto p = p_function(eps);
        for (int j = 0; j <= 400; ++j) {
            const double t = (j - 200) / 100.0;
            const double v = p(t), scale = p.magnitude(t);
            const double normalized = v / scale;
            if (normalized < worst) {
                worst = normalized;
                where = "eps=" + fmt17(to_double(eps)) + ", t=" + fmt17(t);
            }
            if (v < -1e-12 * scale) r.passed = false;
        }
    }
    r.detail = "min p/scale = " + fmt17(worst) + " at " + where;
    return r;
}

CheckResult check_p_structure() {
    CheckResult r{"p_structure", "eps=5..34 integer; comparison at eps=34,40,100", true, ""};
    std::ostringstream detail;
    for (int e = 5; e <= 34; ++e) {
        const Rational eps(e);
        const auto p = p_function(eps);
        const auto ph = p_hat_function(eps);
        if (sigma(p) != 6 || sigma(ph) != 4) {
            r.passed = false;
            detail << "sign-change count off at eps=" << e << "; ";
        }
        for (unsigned k = 0; k < 4; ++k)
            if (p.derivative_at_zero(k) != 0 || ph.derivative_at_zero(k) != 0) {
                r.passed = false;
                detail << "derivative " << k << " non-zero at eps=" << e << "; ";
            }
        const Rational d4 = 24 * eps * eps * eps * (eps + 2) * (2 * eps * eps - 11 * eps + 8);
        if (p.derivative_at_zero(4) != d4) {
            r.passed = false;
            detail << "fourth derivative mismatch at eps=" << e << "; ";
        }
    }
    for (int e : {34, 40, 100}) {
        const Rational eps(e);
        const auto diff = p_function(eps) - p_hat_function(eps).scaled(Rational(4) * (eps + 2) / (3 * eps - 1));
        if (sigma(diff) != 4) {
            r.passed = false;
            detail << "comparison function has " << sigma(diff) << " sign changes at eps=" << e << "; ";
        }
    }
    r.detail = r.passed ? "sigma(p)=6, sigma(p_hat)=4, quadruple root at t=0, p''''(0) closed form" : detail.str();
    return r;
}

CheckResult check_p51() {
    CheckResult r{"p51", "s=k/100, k=1..1000", true, ""};
    const auto printed = p51_printed();
    const auto derived = p51_derived();
    std::ostringstream detail;
    if (!(printed == derived)) {
        r.passed = false;
        detail << "derived polynomial " << derived.to_string() << " differs from the printed one; ";
    }
    if (printed(BigInt(1)) != 2625) {
        r.passed = false;
        detail << "value at 1 is " << printed(BigInt(1)) << "; ";
    }
    Rational min_value = -1;
    for (int k = 1; k <= 1000; ++k) {
        const Rational s(k, 100);
        const Rational v = printed(s), b = p51_bound(s);
        if (min_value < 0 || v < min_value) min_value = v;
        if (!(v > 0) || !(b > 0) || b > v) {
            r.passed = false;
            detail << "check fails at s=" << k << "/100; ";
            break;
        }
    }
    r.detail = r.passed ? "printed equals derived; positive with positive lower bound; min value " +
                              fmt17(to_double(min_value))
                        : detail.str();
    return r;
}

CheckResult check_gautschi(int n) {
    CheckResult r{"gautschi", std::to_string(n) + " log-spaced a in [1e-3, 1e4]", true, ""};
    double min_low = std::numeric_limits<double>::infinity(), min_high = min_low;
    for (int k = 0; k < n; ++k) {
        const double a = 1e-3 * std::pow(1e7, k / (n - 1.0));
        const double inv = boost::math::tgamma_delta_ratio(a + 0.5, 0.5);  // Gamma(a+1/2)/Gamma(a+1)
        const double ratio = 1.0 / (inv * inv);
        const double low = ratio - (a + 0.25), high = (a + 1.0 / std::numbers::pi) - ratio;
        min_low = std::min(min_low, low);
        min_high = std::min(min_high, high);
        if (!(low > 0.0 && high > 0.0)) r.passed = false;
    }
    r.detail = "min margins: lower " + fmt17(min_low) + ", upper " + fmt17(min_high);
    return r;
}

CheckResult check_binomial_ineq(int n) {
    const int na = std::max(2, static_cast<int>(std::lround(std::sqrt(n * 1.6)))), nb = std::max(2, n / na);
    CheckResult r{"binomial", std::to_string(na) + "x" + std::to_string(nb) + " log grid a in [1e-3,1e2], b in [1e-2,1e2]",
                  true, ""};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < na; ++i) {
        const double a = 1e-3 * std::pow(1e5, i / (na - 1.0));
        for (int j = 0; j < nb; ++j) {
            const double b = 1e-2 * std::pow(1e4, j / (nb - 1.0));
            const double u = (b + 1.0) * std::log1p(a);
            const double log_ratio = u + std::log(-std::expm1(-u)) - std::log(a);
            const double root = std::exp(log1p(b) / b);
            const double middle = std::exp(log_ratio / b) - root;
            const double lo = a * std::min(0.5 * root, 1.0), hi = a * std::max(0.5 * root, 1.0);
            const double slack = 1e-10 * std::max({std::abs(middle), hi, root});
            const double margin = std::min(middle - lo, hi - middle) + slack;
            worst = std::min(worst, margin / std::max(hi, 1e-300));
            if (middle < lo - slack || middle > hi + slack) r.passed = false;
        }
    }
    r.detail = "min relative margin (with 1e-10 slack) " + fmt17(worst);
    return r;
}

CheckResult check_descartes(int trials, std::uint32_t seed) {
    CheckResult r{"descartes", std::to_string(trials) + " random sums, seed " + std::to_string(seed), true, ""};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> nterms(1, 7), coeff(-9, 9), num(-12, 12), den(1, 3);
    int max_roots = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<ExpTerm> terms;
        const int m = nterms(rng);
        for (int i = 0; i < m; ++i) {
            int a = 0;
            while (a == 0) a = coeff(rng);
            terms.push_back({Rational(a), Rational(num(rng), den(rng))});
        }
        const ExpPolynomial g(std::move(terms));
        const auto& t = g.terms();
        if (t.empty()) continue;
        const int s = sigma(g);

        // Beyond T the extreme terms dominate, so every root lies in [-T, T].
        double total = 0.0;
        for (const auto& term : t) total += std::abs(to_double(term.coefficient));
        double T = 1.0;
        if (t.size() > 1) {
            const double right = std::log(total / std::abs(to_double(t.front().coefficient))) /
                                 to_double(t[0].exponent - t[1].exponent);
            const double left = std::log(total / std::abs(to_double(t.back().coefficient))) /
                                to_double(t[t.size() - 2].exponent - t.back().exponent);
            T = std::max({T, right, left}) + 1.0;
        }
        const double top = to_double(t.front().exponent), bottom = to_double(t.back().exponent);
        auto sign_at = [&](double x) {
            const double shift = x >= 0.0 ? top : bottom;
            double v = 0.0;
            for (const auto& term : t)
                v += to_double(term.coefficient) * std::exp((to_double(term.exponent) - shift) * x);
            return (v > 0.0) - (v < 0.0);
        };
        constexpr int samples = 40001;
        int changes = 0, prev = 0;
        for (int k = 0; k < samples; ++k) {
            const int sg = sign_at(-T + 2.0 * T * k / (samples - 1.0));
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++changes;
            prev = sg;
        }
        max_roots = std::max(max_roots, changes);
        if (changes > s || (changes - s) % 2 != 0) {
            r.passed = false;
            r.detail = "trial " + std::to_string(trial) + ": " + std::to_string(changes) + " roots vs sigma " +
                       std::to_string(s);
            return r;
        }
    }
    r.detail = "root counts within sigma and of equal parity; max roots " + std::to_string(max_roots);
    return r;
}

Certificate run_suite(Suite suite, std::uint32_t seed) {
    Certificate c;
    const bool all = suite == Suite::all;
    if (all || suite == Suite::p) {
        c.checks.push_back(check_p_structure());
        c.checks.push_back(check_printed_expansions());
        c.checks.push_back(certify_positive_coeffs('p', 0, 12));
        c.checks.push_back(check_closed_forms('p', 0, 20));
        c.checks.push_back(check_domination('p', 13));
        c.checks.push_back(check_p_grid());
    }
    if (all || suite == Suite::q) {
        c.checks.push_back(certify_positive_coeffs('q', 0, 43));
        c.checks.push_back(check_closed_forms('q', 0, 50));
        c.checks.push_back(check_domination('q', 44));
    }
    if (all || suite == Suite::p51) c.checks.push_back(check_p51());
    if (all || suite == Suite::gautschi) c.checks.push_back(check_gautschi());
    if (all || suite == Suite::binomial) c.checks.push_back(check_binomial_ineq());
    if (all) c.checks.push_back(check_descartes(100, seed));
    return c;
}

Suite suite_from_name(const std::string& name) {
    if (name == "p") return Suite::p;
    if (name == "q") return Suite::q;
    if (name == "p51") return Suite::p51;
    if (name == "gautschi") return Suite::gautschi;
    if (name == "binomial") return Suite::binomial;
    if (name == "all") return Suite::all;
    throw DomainError("unknown suite '" + name + "' (expected p, q, p51, gautschi, binomial or all)");
}

} // namespace curvelaw
