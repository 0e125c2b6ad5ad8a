#include "singdyn/harmonic.hpp"

#include <array>

namespace singdyn {

double TimePoly::operator()(double t) const {
    double r = 0.0;
    for (size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
    return r;
}

double TimePoly::derivative(double t) const {
    double r = 0.0;
    for (size_t k = c_.size(); k-- > 1;) r = r * t + k * c_[k];
    return r;
}

std::pair<HPoly, HPoly> harmonic_basis(int degree) {
    if (degree < 0) throw Error("harmonic_basis: negative degree");
    switch (degree) {
        case 0:
            return {HPoly::constant(1.0), HPoly(0)};
        case 1:
            return {HPoly::linear({1.0, 0.0}), HPoly::linear({0.0, 1.0})};
        case 2:
            return {HPoly(2, {1.0, 0.0, -1.0}), HPoly(2, {0.0, 1.0, 0.0})};
        case 3:
            return {HPoly(3, {1.0, 0.0, -3.0, 0.0}), HPoly(3, {0.0, -3.0, 0.0, 1.0})};
        default: {
            // Re/Im of (x1 + i x2)^k by the usual recurrence
            HPoly re = HPoly::linear({1.0, 0.0});
            HPoly im = HPoly::linear({0.0, 1.0});
            const HPoly X1 = HPoly::linear({1.0, 0.0});
            const HPoly X2 = HPoly::linear({0.0, 1.0});
            for (int k = 2; k <= degree; ++k) {
                HPoly re2 = X1 * re - X2 * im;
                HPoly im2 = X1 * im + X2 * re;
                re = std::move(re2);
                im = std::move(im2);
            }
            return {re, im};
        }
    }
}

void DriftField::set(int degree, TimePoly a, TimePoly b) {
    if (degree < 0) throw Error("DriftField: negative degree");
    if (static_cast<size_t>(degree) >= terms_.size())
        terms_.resize(degree + 1);
    terms_[degree] = HarmonicTerm{degree, std::move(a), std::move(b)};
}

bool DriftField::empty() const {
    for (const auto& term : terms_)
        if (!term.a.empty() || !term.b.empty()) return false;
    return true;
}

double DriftField::coeff_a(int degree, double t) const {
    if (degree < 0 || static_cast<size_t>(degree) >= terms_.size()) return 0.0;
    return terms_[degree].a.empty() ? 0.0 : terms_[degree].a(t);
}

double DriftField::coeff_b(int degree, double t) const {
    if (degree < 0 || static_cast<size_t>(degree) >= terms_.size()) return 0.0;
    return terms_[degree].b.empty() ? 0.0 : terms_[degree].b(t);
}

double DriftField::coeff_a_dot(int degree, double t) const {
    if (degree < 0 || static_cast<size_t>(degree) >= terms_.size()) return 0.0;
    return terms_[degree].a.empty() ? 0.0 : terms_[degree].a.derivative(t);
}

double DriftField::coeff_b_dot(int degree, double t) const {
    if (degree < 0 || static_cast<size_t>(degree) >= terms_.size()) return 0.0;
    return terms_[degree].b.empty() ? 0.0 : terms_[degree].b.derivative(t);
}

HPoly DriftField::term(int degree, double t) const {
    auto [ba, bb] = harmonic_basis(degree);
    return coeff_a(degree, t) * ba + coeff_b(degree, t) * bb;
}

std::vector<HPoly> DriftField::terms(double t, int min_degree) const {
    const int top = std::max(max_degree(), min_degree);
    std::vector<HPoly> out;
    out.reserve(top + 1);
    for (int k = 0; k <= top; ++k) out.push_back(term(k, t));
    return out;
}

Vec2 DriftField::grad_at(double t, Vec2 x) const {
    Vec2 g{0.0, 0.0};
    for (int k = 1; k <= max_degree(); ++k) {
        HPoly wk = term(k, t);
        g += Vec2{dx1(wk).eval(x), dx2(wk).eval(x)};
    }
    return g;
}

std::array<double, 3> DriftField::hessian_at(double t, Vec2 x) const {
    double h11 = 0.0, h12 = 0.0, h22 = 0.0;
    for (int k = 2; k <= max_degree(); ++k) {
        HPoly wk = term(k, t);
        h11 += dx1(dx1(wk)).eval(x);
        h12 += dx2(dx1(wk)).eval(x);
        h22 += dx2(dx2(wk)).eval(x);
    }
    return {h11, h12, h22};
}

Vec2 DriftField::dkx1_grad_at(double t, Vec2 x, int k) const {
    Vec2 g{0.0, 0.0};
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    for (int m = 1; m <= max_degree(); ++m) {
        HPoly wk = term(m, t);
        HPoly u = dx1(wk), v = dx2(wk);
        for (int i = 0; i < k; ++i) {
            u = dx1(u);
            v = dx1(v);
        }
        g += Vec2{u.eval(x), v.eval(x)};
    }
    return g * (1.0 / kfact);
}

Vec2 DriftField::grad_dt_at(double t, Vec2 x) const {
    Vec2 g{0.0, 0.0};
    for (int k = 1; k <= max_degree(); ++k) {
        auto [ba, bb] = harmonic_basis(k);
        HPoly wk = coeff_a_dot(k, t) * ba + coeff_b_dot(k, t) * bb;
        g += Vec2{dx1(wk).eval(x), dx2(wk).eval(x)};
    }
    return g;
}

}  // namespace singdyn
