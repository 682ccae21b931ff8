#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>

namespace curvelaw {

template <std::size_t N>
using State = std::array<double, N>;

/// Thrown when the step size collapses.
class StepUnderflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Dormand-Prince 5(4) with PI step control and 4th-order dense output.
 *
 * Integrates in the direction of sign(dir). The step never passes the current
 * stop time, so callers can land exactly on output times.
 */
template <std::size_t N, class Rhs>
class DormandPrince {
public:
    DormandPrince(Rhs rhs, double t0, const State<N>& y0, double dir, double abs_tol, double rel_tol,
                  double h_max = std::numeric_limits<double>::infinity())
        : rhs_(std::move(rhs)), t_(t0), t_old_(t0), y_(y0), y_old_(y0), dir_(dir < 0 ? -1.0 : 1.0),
          atol_(abs_tol), rtol_(rel_tol), h_max_(h_max) {
        t_stop_ = dir_ * std::numeric_limits<double>::infinity();
        k1_ = rhs_(t_, y_);
        h_ = initial_step();
    }

    [[nodiscard]] double t() const { return t_; }
    [[nodiscard]] double t_old() const { return t_old_; }
    [[nodiscard]] const State<N>& y() const { return y_; }
    [[nodiscard]] const State<N>& y_old() const { return y_old_; }
    [[nodiscard]] const State<N>& derivative() const { return k1_; }
    [[nodiscard]] std::size_t accepted_steps() const { return accepted_; }

    void set_stop(double t_stop) { t_stop_ = t_stop; }

    /// Take one accepted step; returns false if already at the stop time.
    bool step() {
        if (dir_ * (t_stop_ - t_) <= 0.0) return false;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            double h = std::min(h_, h_max_);
            const double remaining = dir_ * (t_stop_ - t_);
            bool lands = false;
            if (h >= remaining) {
                h = remaining;
                lands = true;
            }
            if (!lands && h < 1e-14 * std::max(1.0, std::abs(t_)))
                throw StepUnderflow("step size underflow");
            const double hs = dir_ * h;
            stage(hs);
            const double err = error_norm(hs);
            if (err <= 1.0) {
                const double fac11 = std::pow(std::max(err, 1e-300), kExpo1);
                double fac = fac11 / std::pow(facold_, kBeta);
                fac = std::max(kFacMin, std::min(kFacMax, fac / kSafe));
                facold_ = std::max(err, 1e-4);
                t_old_ = t_;
                y_old_ = y_;
                k1_old_ = k1_;
                t_ = lands ? t_stop_ : t_ + hs;
                y_ = ynew_;
                build_dense(hs);
                k1_ = k7_;
                h_last_ = hs;
                h_ = h / fac;
                if (rejected_last_) h_ = std::min(h_, h);
                rejected_last_ = false;
                ++accepted_;
                return true;
            }
            const double fac11 = std::pow(err, kExpo1);
            h_ = h / std::min(kFacMax, fac11 / kSafe);
            rejected_last_ = true;
        }
        throw StepUnderflow("too many rejected steps");
    }

    /// Dense output on the last accepted step.
    [[nodiscard]] State<N> dense(double t) const {
        const double theta = (t - t_old_) / h_last_;
        const double theta1 = 1.0 - theta;
        State<N> r;
        for (std::size_t i = 0; i < N; ++i)
            r[i] = rc1_[i] + theta * (rc2_[i] + theta1 * (rc3_[i] + theta * (rc4_[i] + theta1 * rc5_[i])));
        return r;
    }

private:
    static constexpr double kBeta = 0.04;
    static constexpr double kExpo1 = 0.2 - kBeta * 0.75;
    static constexpr double kSafe = 0.9;
    static constexpr double kFacMin = 0.1;  // largest growth is 1/kFacMin
    static constexpr double kFacMax = 5.0;  // largest shrink

    double initial_step() {
        // Hairer-Wanner starting step heuristic.
        double d0 = 0, d1 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol_ + rtol_ * std::abs(y_[i]);
            d0 += (y_[i] / sk) * (y_[i] / sk);
            d1 += (k1_[i] / sk) * (k1_[i] / sk);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, h_max_);
        State<N> y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + dir_ * h0 * k1_[i];
        const State<N> f1 = rhs_(t_ + dir_ * h0, y1);
        double d2 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol_ + rtol_ * std::abs(y_[i]);
            d2 += ((f1[i] - k1_[i]) / sk) * ((f1[i] - k1_[i]) / sk);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, h_max_});
    }

    void stage(double h) {
        State<N> tmp;
        auto combo = [&](std::initializer_list<std::pair<const State<N>*, double>> terms) {
            for (std::size_t i = 0; i < N; ++i) {
                double s = 0.0;
                for (const auto& [k, c] : terms) s += c * (*k)[i];
                tmp[i] = y_[i] + h * s;
            }
            return tmp;
        };
        k2_ = rhs_(t_ + h / 5.0, combo({{&k1_, 1.0 / 5.0}}));
        k3_ = rhs_(t_ + 3.0 * h / 10.0, combo({{&k1_, 3.0 / 40.0}, {&k2_, 9.0 / 40.0}}));
        k4_ = rhs_(t_ + 4.0 * h / 5.0, combo({{&k1_, 44.0 / 45.0}, {&k2_, -56.0 / 15.0}, {&k3_, 32.0 / 9.0}}));
        k5_ = rhs_(t_ + 8.0 * h / 9.0, combo({{&k1_, 19372.0 / 6561.0},
                                              {&k2_, -25360.0 / 2187.0},
                                              {&k3_, 64448.0 / 6561.0},
                                              {&k4_, -212.0 / 729.0}}));
        k6_ = rhs_(t_ + h, combo({{&k1_, 9017.0 / 3168.0},
                                  {&k2_, -355.0 / 33.0},
                                  {&k3_, 46732.0 / 5247.0},
                                  {&k4_, 49.0 / 176.0},
                                  {&k5_, -5103.0 / 18656.0}}));
        ynew_ = combo({{&k1_, 35.0 / 384.0},
                       {&k3_, 500.0 / 1113.0},
                       {&k4_, 125.0 / 192.0},
                       {&k5_, -2187.0 / 6784.0},
                       {&k6_, 11.0 / 84.0}});
        k7_ = rhs_(t_ + h, ynew_);
    }

    double error_norm(double h) const {
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                         e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
            const double sk = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            acc += (e / sk) * (e / sk);
        }
        const double err = std::sqrt(acc / N);
        return std::isfinite(err) ? err : 1e10;
    }

    void build_dense(double h) {
        constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                         d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                         d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y_[i] - y_old_[i];
            const double bspl = h * k1_old_[i] - ydiff;
            rc1_[i] = y_old_[i];
            rc2_[i] = ydiff;
            rc3_[i] = bspl;
            rc4_[i] = ydiff - h * k7_[i] - bspl;
            rc5_[i] = h * (d1 * k1_old_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] + d7 * k7_[i]);
        }
    }

    Rhs rhs_;
    double t_, t_old_;
    State<N> y_, y_old_;
    double dir_;
    double atol_, rtol_, h_max_;
    double h_ = 0.0, h_last_ = 0.0;
    double t_stop_ = std::numeric_limits<double>::infinity();
    double facold_ = 1e-4;
    bool rejected_last_ = false;
    std::size_t accepted_ = 0;
    State<N> k1_{}, k1_old_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, ynew_{};
    State<N> rc1_{}, rc2_{}, rc3_{}, rc4_{}, rc5_{};
};

/// Locate a sign change of g on the last step of the stepper by bisection on dense output.
template <class Stepper, class G>
[[nodiscard]] double locate_event(const Stepper& st, G&& g, double t_tol = 1e-12) {
    double a = st.t_old(), b = st.t();
    double ga = g(st.y_old());
    for (int it = 0; it < 200 && std::abs(b - a) > t_tol; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(st.dense(m));
        if (gm == 0.0) return m;
        if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace curvelaw
