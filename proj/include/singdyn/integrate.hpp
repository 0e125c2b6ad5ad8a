#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "singdyn/errors.hpp"

namespace singdyn {

using RhsFn = std::function<void(double t, const std::vector<double>& y,
                                 std::vector<double>& dy)>;
using ObserverFn = std::function<void(double t, const std::vector<double>& y)>;

/// Classical fixed-step 4th-order Runge-Kutta. The observer is called at t0
/// and after every accepted step; a shortened final step lands exactly on t1.
/// Throws NonFiniteError as soon as any state entry stops being finite.
inline void rk4_integrate(std::vector<double>& y, double t0, double t1, double dt,
                          const RhsFn& f, const ObserverFn& observe = {}) {
    if (!(dt > 0.0) || !(t1 > t0)) throw Error("rk4: need t1 > t0 and dt > 0");
    const auto check = [](double t, const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) throw NonFiniteError(t);
    };
    check(t0, y);
    if (observe) observe(t0, y);

    const size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    const auto step = [&](double t, double h) {
        f(t, y, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, tmp, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        f(t + h, tmp, k4);
        for (size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };

    const long long nfull = static_cast<long long>(std::floor((t1 - t0) / dt + 1e-9));
    double t = t0;
    for (long long i = 1; i <= nfull; ++i) {
        step(t, dt);
        t = t0 + static_cast<double>(i) * dt;
        check(t, y);
        if (observe) observe(t, y);
    }
    if (t < t1 - 1e-12 * std::max(1.0, std::abs(t1))) {
        step(t, t1 - t);
        check(t1, y);
        if (observe) observe(t1, y);
    }
}

}  // namespace singdyn
