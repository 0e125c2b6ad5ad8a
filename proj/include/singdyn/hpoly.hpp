#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "singdyn/errors.hpp"

namespace singdyn {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    Vec2 operator+(Vec2 o) const { return {x1 + o.x1, x2 + o.x2}; }
    Vec2 operator-(Vec2 o) const { return {x1 - o.x1, x2 - o.x2}; }
    Vec2 operator-() const { return {-x1, -x2}; }
    Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
    Vec2& operator+=(Vec2 o) {
        x1 += o.x1;
        x2 += o.x2;
        return *this;
    }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
// Rotation T with T12 = -T21 = -1: v^perp = (-v2, v1).
inline Vec2 perp(Vec2 v) { return {-v.x2, v.x1}; }
inline double norm(Vec2 v) { return std::hypot(v.x1, v.x2); }

/// Homogeneous polynomial in (x1, x2). Entry j of the coefficient array is
/// the coefficient of x1^(degree-j) * x2^j; a degree-n polynomial has exactly
/// n+1 entries. The all-zero vector is a valid zero polynomial of its degree.
class HPoly {
public:
    HPoly() : deg_(0), c_(1, 0.0) {}
    explicit HPoly(int degree) : deg_(degree), c_(degree + 1, 0.0) {}
    HPoly(int degree, std::vector<double> coeffs);

    static HPoly constant(double value);
    static HPoly linear(Vec2 gradient);  // g1*x1 + g2*x2
    static HPoly monomial(int degree, int j, double coeff = 1.0);

    int degree() const { return deg_; }
    double coeff(int j) const { return c_[j]; }
    double& coeff(int j) { return c_[j]; }
    std::span<const double> coeffs() const { return c_; }

    double eval(Vec2 x) const;
    double max_abs() const;
    bool is_zero() const;

    HPoly& operator+=(const HPoly& o);
    HPoly& operator-=(const HPoly& o);
    HPoly& operator*=(double s);
    HPoly operator-() const;

private:
    int deg_;
    std::vector<double> c_;
};

HPoly operator+(HPoly a, const HPoly& b);
HPoly operator-(HPoly a, const HPoly& b);
HPoly operator*(const HPoly& a, const HPoly& b);
HPoly operator*(HPoly p, double s);
inline HPoly operator*(double s, HPoly p) { return std::move(p) * s; }

/// Pair of homogeneous polynomials of equal degree (a polynomial vector
/// field, e.g. a gradient).
struct HPolyVec {
    HPoly u, v;

    HPolyVec() = default;
    HPolyVec(HPoly u_, HPoly v_);
    int degree() const { return u.degree(); }
    Vec2 eval(Vec2 x) const { return {u.eval(x), v.eval(x)}; }
};

HPoly dx1(const HPoly& p);
HPoly dx2(const HPoly& p);
HPolyVec grad(const HPoly& p);
HPoly laplacian(const HPoly& p);
HPoly divergence(const HPolyVec& w);
HPoly dot(const HPolyVec& a, const HPolyVec& b);
HPoly dot(Vec2 a, const HPolyVec& b);
HPolyVec operator+(const HPolyVec& a, const HPolyVec& b);
HPolyVec operator-(const HPolyVec& a, const HPolyVec& b);
HPolyVec operator*(const HPolyVec& a, double s);
inline HPolyVec operator*(double s, const HPolyVec& a) { return a * s; }
HPolyVec operator*(const HPoly& p, const HPolyVec& a);

/// Gradient of a degree-1 polynomial as a plain vector.
Vec2 grad_linear(const HPoly& p);

/// The polynomial x^2 = x1^2 + x2^2.
HPoly r2_poly();

/// Factor p = x^2 * q. Throws NotDivisibleError when the remainder max-norm
/// exceeds tol_rel * max-norm(p).
HPoly factor_out_r2(const HPoly& p, double tol_rel = 1e-10);

}  // namespace singdyn
