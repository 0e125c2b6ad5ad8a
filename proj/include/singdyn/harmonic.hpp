#pragma once

#include <utility>
#include <vector>

#include "singdyn/hpoly.hpp"

namespace singdyn {

/// Polynomial in t, used for the time-dependent drift coefficients
/// omega_alpha(t); derivatives are taken analytically.
class TimePoly {
public:
    TimePoly() = default;
    TimePoly(std::initializer_list<double> c) : c_(c) {}
    explicit TimePoly(std::vector<double> c) : c_(std::move(c)) {}
    static TimePoly constant(double v) { return TimePoly({v}); }

    double operator()(double t) const;
    double derivative(double t) const;
    bool empty() const { return c_.empty(); }
    std::span<const double> coeffs() const { return c_; }

private:
    std::vector<double> c_;  // c_[k] t^k
};

/// Basis pair spanning the harmonic polynomials of a given degree:
///   k = 0: (1, 0)
///   k = 1: (x1, x2)
///   k = 2: (x1^2 - x2^2, x1 x2)
///   k = 3: (x1 (x1^2 - 3 x2^2), x2 (x2^2 - 3 x1^2))
///   k >= 4: (Re (x1 + i x2)^k, Im (x1 + i x2)^k)
std::pair<HPoly, HPoly> harmonic_basis(int degree);

/// One harmonic term W_k(x, t) = a(t) * basis_a + b(t) * basis_b.
struct HarmonicTerm {
    int degree = 0;
    TimePoly a, b;
};

/// Harmonic drift potential w(x,t) = sum_k W_k(x,t). The advecting field is
/// grad w. An empty field evaluates to zero everywhere.
class DriftField {
public:
    DriftField() = default;

    void set(int degree, TimePoly a, TimePoly b = {});
    int max_degree() const { return static_cast<int>(terms_.size()) - 1; }
    bool empty() const;

    double coeff_a(int degree, double t) const;
    double coeff_b(int degree, double t) const;
    double coeff_a_dot(int degree, double t) const;
    double coeff_b_dot(int degree, double t) const;

    /// W_k as a homogeneous polynomial at time t (zero when unset).
    HPoly term(int degree, double t) const;
    /// All W_k for k = 0..max(max_degree, min_degree).
    std::vector<HPoly> terms(double t, int min_degree = 0) const;

    Vec2 grad_at(double t, Vec2 x) const;
    /// Hessian entries (h11, h12, h22); matrix is symmetric and traceless.
    std::array<double, 3> hessian_at(double t, Vec2 x) const;
    /// (1/k!) d^k/dx1^k of grad w at x: Taylor coefficient of grad w along x1.
    Vec2 dkx1_grad_at(double t, Vec2 x, int k) const;
    /// Time derivative of grad w at fixed x.
    Vec2 grad_dt_at(double t, Vec2 x) const;

private:
    std::vector<HarmonicTerm> terms_;  // index == degree
};

}  // namespace singdyn
