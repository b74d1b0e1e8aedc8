#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "slzflow/errors.hpp"

namespace slz {

enum class StepOutcome { accepted, rejected };

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    double max_error_estimate = 0.0; // largest accepted scaled error
};

/// Dormand-Prince explicit Runge-Kutta 5(4) pair with PI step-size control.
/// The right-hand side may throw DomainError; the driver reacts by shrinking
/// the step (see integrate_adaptive below).
template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<State(double, const State&)>;

    Dopri5(Rhs rhs, double abs_tol, double rel_tol)
        : rhs_(std::move(rhs)), atol_(abs_tol), rtol_(rel_tol) {}

    /// One attempted step from (t, y) with step h; on acceptance y, t and the
    /// stored derivative are advanced (FSAL).  h_next is always updated.
    StepOutcome try_step(double& t, State& y, double h, double& h_next) {
        if (!have_k1_) {
            k_[0] = rhs_(t, y);
            have_k1_ = true;
        }
        State ytmp;
        for (int stage = 1; stage < 6; ++stage) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0.0;
                for (int j = 0; j < stage; ++j) acc += A[stage - 1][j] * k_[j][i];
                ytmp[i] = y[i] + h * acc;
            }
            k_[stage] = rhs_(t + C[stage] * h, ytmp);
        }
        State ynew;
        for (std::size_t i = 0; i < N; ++i) {
            double acc = 0.0;
            for (int j = 0; j < 6; ++j) acc += B5[j] * k_[j][i];
            ynew[i] = y[i] + h * acc;
        }
        const State k7 = rhs_(t + h, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = 0.0;
            for (int j = 0; j < 6; ++j) e += E[j] * k_[j][i];
            e += E[6] * k7[i];
            const double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = h * e / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(N));

        const double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
        if (err <= 1.0) {
            const double e_clamped = std::max(err, 1e-10);
            double fac = safety * std::pow(e_clamped, -0.7 / 5.0) * std::pow(err_old_, 0.4 / 5.0);
            fac = std::min(fac_max, std::max(fac_min, fac));
            h_next = h * fac;
            err_old_ = e_clamped;
            t += h;
            y = ynew;
            k_[0] = k7; // FSAL
            last_error_ = err;
            return StepOutcome::accepted;
        }
        const double fac = std::max(fac_min, safety * std::pow(err, -0.2));
        h_next = h * fac;
        return StepOutcome::rejected;
    }

    void reset_derivative() { have_k1_ = false; }
    double last_error() const { return last_error_; }

private:
    static constexpr double C[6] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0};
    static constexpr double A[5][5] = {
        {1.0 / 5.0, 0, 0, 0, 0},
        {3.0 / 40.0, 9.0 / 40.0, 0, 0, 0},
        {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0, 0},
        {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0},
        {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0}};
    static constexpr double B5[6] = {35.0 / 384.0,    0.0,          500.0 / 1113.0,
                                     125.0 / 192.0,   -2187.0 / 6784.0, 11.0 / 84.0};
    // b5 - b4 embedded-error weights (k7 included)
    static constexpr double E[7] = {71.0 / 57600.0,      0.0,          -71.0 / 16695.0,
                                    71.0 / 1920.0,       -17253.0 / 339200.0,
                                    22.0 / 525.0,        -1.0 / 40.0};

    Rhs rhs_;
    double atol_, rtol_;
    std::array<State, 6> k_{};
    bool have_k1_ = false;
    double err_old_ = 1e-4;
    double last_error_ = 0.0;
};

} // namespace slz
