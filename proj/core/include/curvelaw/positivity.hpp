#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace curvelaw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Polynomial with arbitrary-precision integer coefficients, ascending degree.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    IntegerPolynomial(std::vector<BigInt> coefficients);  // NOLINT: implicit from a coefficient list

    /// c0 + c1 x for a linear factor.
    [[nodiscard]] static IntegerPolynomial linear(std::int64_t c0, std::int64_t c1);
    [[nodiscard]] static IntegerPolynomial constant(std::int64_t c);

    [[nodiscard]] const std::vector<BigInt>& coefficients() const { return c_; }
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }

    [[nodiscard]] IntegerPolynomial operator+(const IntegerPolynomial& o) const;
    [[nodiscard]] IntegerPolynomial operator-(const IntegerPolynomial& o) const;
    [[nodiscard]] IntegerPolynomial operator*(const IntegerPolynomial& o) const;
    [[nodiscard]] IntegerPolynomial pow(unsigned k) const;
    [[nodiscard]] bool operator==(const IntegerPolynomial& o) const { return c_ == o.c_; }

    /// p(x + shift).
    [[nodiscard]] IntegerPolynomial shifted(std::int64_t shift) const;

    [[nodiscard]] BigInt operator()(const BigInt& x) const;
    [[nodiscard]] Rational operator()(const Rational& x) const;

    /// Exact division by (x - 1)^k; throws when the remainder is non-zero.
    [[nodiscard]] IntegerPolynomial divided_by_x_minus_one(unsigned k) const;

    [[nodiscard]] std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

struct ExpTerm {
    Rational coefficient;
    Rational exponent;
};

/// Sum of a_l e^{b_l t} with distinct exponents sorted decreasingly and no zero coefficients.
class ExpPolynomial {
public:
    ExpPolynomial() = default;
    explicit ExpPolynomial(std::vector<ExpTerm> terms);

    [[nodiscard]] const std::vector<ExpTerm>& terms() const { return terms_; }

    /// Compensated double evaluation.
    [[nodiscard]] double operator()(double t) const;
    /// Sum of |a_l e^{b_l t}|, the natural scale for rounding errors.
    [[nodiscard]] double magnitude(double t) const;
    /// k-th derivative at t = 0, exactly.
    [[nodiscard]] Rational derivative_at_zero(unsigned k) const;
    /// e^{shift t} g(-t).
    [[nodiscard]] ExpPolynomial reflected(const Rational& shift) const;
    [[nodiscard]] ExpPolynomial operator-(const ExpPolynomial& o) const;
    [[nodiscard]] ExpPolynomial scaled(const Rational& factor) const;

private:
    std::vector<ExpTerm> terms_;
};

/// Number of sign changes in the coefficient sequence.
[[nodiscard]] int sigma(const ExpPolynomial& g);

/// The eleven-term exponential sum p(eps, .) with the two misprinted terms read as exponentials.
[[nodiscard]] ExpPolynomial p_function(const Rational& eps);
/// The five-term comparison function used for large eps.
[[nodiscard]] ExpPolynomial p_hat_function(const Rational& eps);
/// e^{(4 eps - 1) t} p(eps, -t).
[[nodiscard]] ExpPolynomial q_function(const Rational& eps);

[[nodiscard]] double eval_p(const Rational& eps, double t);

/// n-th Taylor polynomials in nu = eps - 5, from the printed closed forms.
[[nodiscard]] IntegerPolynomial taylor_p(unsigned n);
[[nodiscard]] IntegerPolynomial taylor_q(unsigned n);
/// The same polynomials assembled from the exponential terms of p and q.
[[nodiscard]] IntegerPolynomial taylor_p_from_terms(unsigned n);
[[nodiscard]] IntegerPolynomial taylor_q_from_terms(unsigned n);

/// Expansions printed for p0, p1 and q1, in expanded and factored form.
struct PrintedExpansion {
    IntegerPolynomial expanded;
    IntegerPolynomial factored;
};
[[nodiscard]] PrintedExpansion printed_p0();
[[nodiscard]] PrintedExpansion printed_p1();
[[nodiscard]] PrintedExpansion printed_q1();

/// Degree-15 polynomial with p(5, t) = (e^t - 1)^4 P(e^t): printed and derived versions.
[[nodiscard]] IntegerPolynomial p51_printed();
[[nodiscard]] IntegerPolynomial p51_derived();
/// 15 (213 s^9 min{1,s}^6 - 251 s^4 max{1,s}^4 + 213 min{1,s}^3).
[[nodiscard]] Rational p51_bound(const Rational& s);

struct CheckResult {
    std::string name;
    std::string parameters;
    bool passed = false;
    std::string detail;
};

struct Certificate {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool all_passed() const;
};

/// Coefficient positivity for n in [first, last]; the name is "p" or "q".
[[nodiscard]] CheckResult certify_positive_coeffs(char which, unsigned first, unsigned last);
/// Printed closed forms agree with the exponential terms for n in [first, last].
[[nodiscard]] CheckResult check_closed_forms(char which, unsigned first, unsigned last);
/// Printed p0, p1, q1 expansions match coefficient for coefficient.
[[nodiscard]] CheckResult check_printed_expansions();
/// Domination inequalities at the threshold n for integer nu in [0, 29], plus base-ratio monotonicity.
[[nodiscard]] CheckResult check_domination(char which, unsigned threshold);
/// Smallest n from which the domination inequalities hold at every integer nu in [0, 29].
[[nodiscard]] unsigned domination_onset(char which, unsigned search_limit = 200);
/// p(eps, t) >= -1e-12 * magnitude on eps in [5, 34] step 0.25, t in [-2, 2] step 0.01.
[[nodiscard]] CheckResult check_p_grid();
/// Sign-change counts, quadruple root at 0 and the fourth derivative at eps = 5.
[[nodiscard]] CheckResult check_p_structure();
/// P_{5,1}: derivation, positivity and bound on s = k/100, k = 1..1000.
[[nodiscard]] CheckResult check_p51();
/// a + 1/4 < Gamma(a+1)^2 / Gamma(a+1/2)^2 < a + 1/pi on n log-spaced points in [1e-3, 1e4].
[[nodiscard]] CheckResult check_gautschi(int n = 1000);
/// The two-sided binomial inequality on a grid of about n points.
[[nodiscard]] CheckResult check_binomial_ineq(int n = 1000);
/// Root counts of random exponential sums never exceed sigma and share its parity.
[[nodiscard]] CheckResult check_descartes(int trials = 100, std::uint32_t seed = 20240601);

enum class Suite { p, q, p51, gautschi, binomial, all };

[[nodiscard]] Certificate run_suite(Suite suite, std::uint32_t seed = 20240601);
[[nodiscard]] Suite suite_from_name(const std::string& name);

} // namespace curvelaw
