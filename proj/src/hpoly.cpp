#include "singdyn/hpoly.hpp"

#include <algorithm>
#include <cstdlib>

namespace singdyn {

HPoly::HPoly(int degree, std::vector<double> coeffs)
    : deg_(degree), c_(std::move(coeffs)) {
    if (deg_ < 0 || c_.size() != static_cast<size_t>(deg_) + 1)
        throw Error("HPoly: coefficient count must equal degree+1");
}

HPoly HPoly::constant(double value) {
    HPoly p(0);
    p.c_[0] = value;
    return p;
}

HPoly HPoly::linear(Vec2 gradient) {
    HPoly p(1);
    p.c_[0] = gradient.x1;
    p.c_[1] = gradient.x2;
    return p;
}

HPoly HPoly::monomial(int degree, int j, double coeff) {
    HPoly p(degree);
    p.c_.at(j) = coeff;
    return p;
}

double HPoly::eval(Vec2 x) const {
    // sum_j c_j x1^(n-j) x2^j, accumulated from the x1^n end
    double result = 0.0;
    double p2 = 1.0;
    for (int j = 0; j <= deg_; ++j) {
        double p1 = 1.0;
        for (int k = 0; k < deg_ - j; ++k) p1 *= x.x1;
        result += c_[j] * p1 * p2;
        p2 *= x.x2;
    }
    return result;
}

double HPoly::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

bool HPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

HPoly& HPoly::operator+=(const HPoly& o) {
    if (deg_ != o.deg_) throw Error("HPoly: degree mismatch in add");
    for (int j = 0; j <= deg_; ++j) c_[j] += o.c_[j];
    return *this;
}

HPoly& HPoly::operator-=(const HPoly& o) {
    if (deg_ != o.deg_) throw Error("HPoly: degree mismatch in sub");
    for (int j = 0; j <= deg_; ++j) c_[j] -= o.c_[j];
    return *this;
}

HPoly& HPoly::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

HPoly HPoly::operator-() const {
    HPoly p(*this);
    for (int j = 0; j <= deg_; ++j) p.c_[j] = -p.c_[j];
    return p;
}

HPoly operator+(HPoly a, const HPoly& b) {
    a += b;
    return a;
}

HPoly operator-(HPoly a, const HPoly& b) {
    a -= b;
    return a;
}

HPoly operator*(const HPoly& a, const HPoly& b) {
    HPoly r(a.degree() + b.degree());
    // x2-exponents convolve; x1-exponents follow from homogeneity
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            r.coeff(i + j) += a.coeff(i) * b.coeff(j);
    return r;
}

HPoly operator*(HPoly p, double s) {
    p *= s;
    return p;
}

HPolyVec::HPolyVec(HPoly u_, HPoly v_) : u(std::move(u_)), v(std::move(v_)) {
    if (u.degree() != v.degree())
        throw Error("HPolyVec: component degrees must match");
}

HPoly dx1(const HPoly& p) {
    const int n = p.degree();
    if (n == 0) return HPoly(0);
    HPoly r(n - 1);
    for (int j = 0; j <= n - 1; ++j) r.coeff(j) = (n - j) * p.coeff(j);
    return r;
}

HPoly dx2(const HPoly& p) {
    const int n = p.degree();
    if (n == 0) return HPoly(0);
    HPoly r(n - 1);
    for (int j = 0; j <= n - 1; ++j) r.coeff(j) = (j + 1) * p.coeff(j + 1);
    return r;
}

HPolyVec grad(const HPoly& p) { return HPolyVec(dx1(p), dx2(p)); }

HPoly laplacian(const HPoly& p) {
    const int n = p.degree();
    if (n < 2) return HPoly(0);
    HPoly r(n - 2);
    for (int j = 0; j <= n - 2; ++j) {
        const double a = n - j;  // x1-exponent of term j
        r.coeff(j) = a * (a - 1.0) * p.coeff(j) + (j + 2.0) * (j + 1.0) * p.coeff(j + 2);
    }
    return r;
}

HPoly divergence(const HPolyVec& w) {
    if (w.degree() == 0) return HPoly(0);
    return dx1(w.u) + dx2(w.v);
}

HPoly dot(const HPolyVec& a, const HPolyVec& b) { return a.u * b.u + a.v * b.v; }

HPoly dot(Vec2 a, const HPolyVec& b) { return a.x1 * b.u + a.x2 * b.v; }

HPolyVec operator+(const HPolyVec& a, const HPolyVec& b) {
    return HPolyVec(a.u + b.u, a.v + b.v);
}

HPolyVec operator-(const HPolyVec& a, const HPolyVec& b) {
    return HPolyVec(a.u - b.u, a.v - b.v);
}

HPolyVec operator*(const HPolyVec& a, double s) { return HPolyVec(a.u * s, a.v * s); }

HPolyVec operator*(const HPoly& p, const HPolyVec& a) {
    return HPolyVec(p * a.u, p * a.v);
}

Vec2 grad_linear(const HPoly& p) {
    if (p.degree() != 1) throw Error("grad_linear: degree-1 polynomial expected");
    return {p.coeff(0), p.coeff(1)};
}

HPoly r2_poly() {
    HPoly p(2);
    p.coeff(0) = 1.0;
    p.coeff(2) = 1.0;
    return p;
}

HPoly factor_out_r2(const HPoly& p, double tol_rel) {
    const int n = p.degree();
    if (n < 2) throw NotDivisibleError(p.max_abs());
    HPoly q(n - 2);
    // p_j = q_j + q_{j-2}; solve forward, remainder sits in the last two rows
    for (int j = 0; j <= n - 2; ++j) {
        double prev = (j >= 2) ? q.coeff(j - 2) : 0.0;
        q.coeff(j) = p.coeff(j) - prev;
    }
    const double rem1 = p.coeff(n - 1) - ((n - 3 >= 0) ? q.coeff(n - 3) : 0.0);
    const double rem2 = p.coeff(n) - ((n - 2 >= 0) ? q.coeff(n - 2) : 0.0);
    const double rem = std::max(std::abs(rem1), std::abs(rem2));
    if (rem > tol_rel * std::max(p.max_abs(), 1e-300))
        throw NotDivisibleError(rem);
    return q;
}

}  // namespace singdyn
