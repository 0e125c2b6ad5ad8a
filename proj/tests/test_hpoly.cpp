#include <doctest.h>

#include <random>

#include "singdyn/hpoly.hpp"

using namespace singdyn;

namespace {

HPoly random_poly(int degree, std::mt19937& rng, bool dyadic = false) {
    HPoly p(degree);
    if (dyadic) {
        std::uniform_int_distribution<int> d(-512, 512);
        for (int j = 0; j <= degree; ++j) p.coeff(j) = d(rng) / 64.0;
    } else {
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int j = 0; j <= degree; ++j) p.coeff(j) = d(rng);
    }
    return p;
}

double max_diff(const HPoly& a, const HPoly& b) {
    REQUIRE(a.degree() == b.degree());
    double m = 0.0;
    for (int j = 0; j <= a.degree(); ++j)
        m = std::max(m, std::abs(a.coeff(j) - b.coeff(j)));
    return m;
}

const HPoly X1 = HPoly::linear({1.0, 0.0});
const HPoly X2 = HPoly::linear({0.0, 1.0});

}  // namespace

TEST_SUITE("polyalg") {

TEST_CASE("product expands by hand: (x1 + 2 x2)(x1 - x2)") {
    const HPoly p = HPoly::linear({1.0, 2.0}) * HPoly::linear({1.0, -1.0});
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == 1.0);   // x1^2
    CHECK(p.coeff(1) == 1.0);   // x1 x2
    CHECK(p.coeff(2) == -2.0);  // x2^2
}

TEST_CASE("additive identity") {
    std::mt19937 rng(7);
    const HPoly p = random_poly(4, rng);
    CHECK(max_diff(p + HPoly(4), p) == 0.0);
}

TEST_CASE("monomial product x1^2 * x2^2") {
    const HPoly p = (X1 * X1) * (X2 * X2);
    CHECK(p.degree() == 4);
    for (int j = 0; j <= 4; ++j) CHECK(p.coeff(j) == (j == 2 ? 1.0 : 0.0));
}

TEST_CASE("degree mismatch on add/sub") {
    CHECK_THROWS_AS(HPoly(2) + HPoly(3), Error);
    CHECK_THROWS_AS(HPoly(1) - HPoly(0), Error);
}

TEST_CASE("gradient of x1^2 - x2^2") {
    const HPolyVec g = grad(HPoly(2, {1.0, 0.0, -1.0}));
    CHECK(g.u.coeff(0) == 2.0);
    CHECK(g.u.coeff(1) == 0.0);
    CHECK(g.v.coeff(0) == 0.0);
    CHECK(g.v.coeff(1) == -2.0);
}

TEST_CASE("harmonic quadratic has zero laplacian") {
    // w20 (x1^2 - x2^2) + w11 x1 x2
    const HPoly w2 = 0.75 * HPoly(2, {1.0, 0.0, -1.0}) + (-1.25) * HPoly(2, {0.0, 1.0, 0.0});
    CHECK(laplacian(w2).is_zero());
}

TEST_CASE("euler identity <x, grad p> = n p for random cubics") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const HPoly p = random_poly(3, rng, /*dyadic=*/true);
        const HPoly e = X1 * dx1(p) + X2 * dx2(p);
        CHECK(max_diff(e, 3.0 * p) == 0.0);
    }
}

TEST_CASE("euler identity exact through degree 6") {
    std::mt19937 rng(13);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const HPoly p = random_poly(n, rng, /*dyadic=*/true);
            const HPoly e = X1 * dx1(p) + X2 * dx2(p);
            CHECK(max_diff(e, static_cast<double>(n) * p) == 0.0);
        }
    }
}

TEST_CASE("factor out x^2: constructed inputs") {
    const HPoly q = 3.0 * X1;  // 3 x1
    const HPoly p = r2_poly() * q;
    CHECK(max_diff(factor_out_r2(p), q) == 0.0);

    const HPoly one = factor_out_r2(r2_poly());
    CHECK(one.degree() == 0);
    CHECK(one.coeff(0) == 1.0);
}

TEST_CASE("factor out x^2: x1^3 is not divisible") {
    const HPoly p = X1 * X1 * X1;
    CHECK_THROWS_AS(factor_out_r2(p), NotDivisibleError);
    try {
        factor_out_r2(p);
    } catch (const NotDivisibleError& e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("factor round-trip on random inputs up to degree 6") {
    std::mt19937 rng(17);
    for (int n = 0; n <= 4; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            const HPoly q = random_poly(n, rng);
            const HPoly p = r2_poly() * q;
            const HPoly back = factor_out_r2(p);
            CHECK(max_diff(back, q) <= 1e-14 * std::max(1.0, q.max_abs()));
        }
    }
}

TEST_CASE("evaluation") {
    CHECK(HPoly(2, {0.0, 1.0, 0.0}).eval({2.0, 3.0}) == 6.0);  // x1 x2 at (2,3)
    std::mt19937 rng(19);
    for (int n = 1; n <= 5; ++n) CHECK(random_poly(n, rng).eval({0.0, 0.0}) == 0.0);
    CHECK(r2_poly().eval({3.0, 4.0}) == 25.0);
}

TEST_CASE("multiplication commutes and distributes") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const HPoly a = random_poly(trial % 4 + 1, rng);
        const HPoly b = random_poly(trial % 3 + 1, rng);
        const HPoly c = random_poly(trial % 3 + 1, rng);
        const double scale = std::max(1.0, a.max_abs() * (b.max_abs() + c.max_abs()));
        CHECK(max_diff(a * b, b * a) <= 1e-15 * scale);
        CHECK(max_diff(a * (b + c), a * b + a * c) <= 1e-14 * scale);
    }
}

TEST_CASE("degenerate degrees return zero") {
    CHECK(dx1(HPoly::constant(5.0)).is_zero());
    CHECK(dx1(HPoly::constant(5.0)).degree() == 0);
    CHECK(laplacian(HPoly::linear({1.0, 2.0})).is_zero());
    CHECK(laplacian(HPoly::constant(1.0)).degree() == 0);
}

TEST_CASE("divergence of a gradient is the laplacian") {
    std::mt19937 rng(37);
    for (int n = 2; n <= 6; ++n) {
        const HPoly p = random_poly(n, rng, /*dyadic=*/true);
        CHECK(max_diff(divergence(grad(p)), laplacian(p)) == 0.0);
    }
    CHECK(divergence(HPolyVec(HPoly::constant(3.0), HPoly::constant(-1.0))).is_zero());
}

TEST_CASE("polynomial vectors require equal component degrees") {
    CHECK_THROWS_AS(HPolyVec(HPoly(1), HPoly(2)), Error);
}

TEST_CASE("dot products of polynomial vectors") {
    // <grad(x1 x2), grad(x1 x2)> = x2^2 + x1^2
    const HPoly p = HPoly(2, {0.0, 1.0, 0.0});
    CHECK(max_diff(dot(grad(p), grad(p)), r2_poly()) == 0.0);
    // constant vector against a gradient
    const HPoly q = dot(Vec2{1.0, -1.0}, grad(r2_poly()));
    CHECK(q.coeff(0) == 2.0);
    CHECK(q.coeff(1) == -2.0);
}

}  // TEST_SUITE
