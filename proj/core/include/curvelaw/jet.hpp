#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace curvelaw {

/**
 * @brief Truncated Taylor series c[0] + c[1] h + ... + c[N] h^N.
 *
 * Closed-form laws are written as templates over the scalar type; instantiating
 * them with Jet<N> yields exact derivatives up to order N (c[k] = d^k/k!).
 */
template <std::size_t N>
struct Jet {
    std::array<double, N + 1> c{};

    constexpr Jet() = default;
    constexpr Jet(double v) { c[0] = v; }  // NOLINT: implicit by design

    static constexpr Jet variable(double x0) {
        Jet j(x0);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    [[nodiscard]] constexpr double value() const { return c[0]; }

    /// k-th derivative at the expansion point.
    [[nodiscard]] double derivative(std::size_t k) const {
        double fact = 1.0;
        for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
        return c[k] * fact;
    }
};

template <std::size_t N>
constexpr Jet<N> operator-(const Jet<N>& a) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) r.c[k] = -a.c[k];
    return r;
}

template <std::size_t N>
constexpr Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

template <std::size_t N>
constexpr Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

template <std::size_t N>
constexpr Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
        r.c[k] = s;
    }
    return r;
}

template <std::size_t N>
constexpr Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) {
        double s = a.c[k];
        for (std::size_t i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
        r.c[k] = s / b.c[0];
    }
    return r;
}

template <std::size_t N> constexpr Jet<N> operator+(const Jet<N>& a, double b) { Jet<N> r = a; r.c[0] += b; return r; }
template <std::size_t N> constexpr Jet<N> operator+(double a, const Jet<N>& b) { return b + a; }
template <std::size_t N> constexpr Jet<N> operator-(const Jet<N>& a, double b) { Jet<N> r = a; r.c[0] -= b; return r; }
template <std::size_t N> constexpr Jet<N> operator-(double a, const Jet<N>& b) { return -b + a; }

template <std::size_t N>
constexpr Jet<N> operator*(const Jet<N>& a, double b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) r.c[k] = a.c[k] * b;
    return r;
}
template <std::size_t N> constexpr Jet<N> operator*(double a, const Jet<N>& b) { return b * a; }
template <std::size_t N> constexpr Jet<N> operator/(const Jet<N>& a, double b) { return a * (1.0 / b); }
template <std::size_t N> constexpr Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }

namespace jet_detail {

// Series of the derivative, one order shorter, padded with zero.
template <std::size_t N>
Jet<N> derivative_series(const Jet<N>& a) {
    Jet<N> d;
    for (std::size_t k = 0; k < N; ++k) d.c[k] = static_cast<double>(k + 1) * a.c[k + 1];
    return d;
}

// Antiderivative with constant term c0; the top coefficient of d is dropped.
template <std::size_t N>
Jet<N> integrate_series(const Jet<N>& d, double c0) {
    Jet<N> r(c0);
    for (std::size_t k = 1; k <= N; ++k) r.c[k] = d.c[k - 1] / static_cast<double>(k);
    return r;
}

} // namespace jet_detail

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c[j] * r.c[k - j];
        r.c[k] = s / static_cast<double>(k);
    }
    return r;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
    return jet_detail::integrate_series(jet_detail::derivative_series(a) / a, std::log(a.c[0]));
}

template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double r) {
    Jet<N> p;
    p.c[0] = std::pow(a.c[0], r);
    for (std::size_t k = 1; k <= N; ++k) {
        double s = 0.0;
        for (std::size_t i = 1; i <= k; ++i)
            s += (r * static_cast<double>(i) - static_cast<double>(k - i)) * a.c[i] * p.c[k - i];
        p.c[k] = s / (static_cast<double>(k) * a.c[0]);
    }
    return p;
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
    return pow(a, 0.5);
}

template <std::size_t N>
Jet<N> atan(const Jet<N>& a) {
    return jet_detail::integrate_series(jet_detail::derivative_series(a) / (1.0 + a * a), std::atan(a.c[0]));
}

/// Evaluate the polynomial sum_k coeffs[k] x^k by Horner's rule on any scalar type.
template <class T, class Coeffs>
T horner(const Coeffs& coeffs, const T& x) {
    T acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace curvelaw
