#include <doctest.h>

#include <random>

#include "singdyn/harmonic.hpp"

using namespace singdyn;

TEST_SUITE("harmonic") {

TEST_CASE("time polynomial evaluation and derivative") {
    const TimePoly p{1.0, -2.0, 0.5};  // 1 - 2t + t^2/2
    CHECK(p(0.0) == 1.0);
    CHECK(p(2.0) == doctest::Approx(-1.0));
    CHECK(p.derivative(0.0) == -2.0);
    CHECK(p.derivative(3.0) == doctest::Approx(1.0));
    CHECK(TimePoly{}.empty());
}

TEST_CASE("quadratic basis matches omega20 (x1^2-x2^2) + omega11 x1 x2") {
    DriftField d;
    d.set(2, TimePoly::constant(1.0), TimePoly::constant(0.0));
    const HPoly w2 = d.term(2, 0.0);
    CHECK(w2.coeff(0) == 1.0);
    CHECK(w2.coeff(1) == 0.0);
    CHECK(w2.coeff(2) == -1.0);
}

TEST_CASE("cubic basis: x1 (x1^2 - 3 x2^2) and x2 (x2^2 - 3 x1^2)") {
    DriftField d;
    d.set(3, TimePoly::constant(1.0), TimePoly::constant(0.0));
    const HPoly a = d.term(3, 0.0);
    CHECK(a.coeff(0) == 1.0);
    CHECK(a.coeff(2) == -3.0);
    DriftField e;
    e.set(3, TimePoly::constant(0.0), TimePoly::constant(1.0));
    const HPoly b = e.term(3, 0.0);
    CHECK(b.coeff(1) == -3.0);
    CHECK(b.coeff(3) == 1.0);
}

TEST_CASE("degree-0 term is a constant") {
    DriftField d;
    d.set(0, TimePoly{2.0, 1.0});
    CHECK(d.term(0, 3.0).degree() == 0);
    CHECK(d.term(0, 3.0).coeff(0) == 5.0);
}

TEST_CASE("all realized terms are harmonic (dyadic coefficients, k <= 6)") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> di(-512, 512);
    for (int k = 0; k <= 6; ++k) {
        for (int trial = 0; trial < 25; ++trial) {
            DriftField d;
            d.set(k, TimePoly{di(rng) / 64.0, di(rng) / 64.0},
                  TimePoly{di(rng) / 64.0, di(rng) / 64.0});
            CHECK(laplacian(d.term(k, 0.75)).is_zero());
        }
    }
}

TEST_CASE("point evaluation agrees with the polynomial route") {
    DriftField d;
    d.set(1, TimePoly{0.5}, TimePoly{-1.0});
    d.set(2, TimePoly{1.0, 2.0}, TimePoly{0.25});
    d.set(3, TimePoly{-0.5}, TimePoly{0.75});
    const double t = 0.3;
    const Vec2 x{0.7, -1.2};

    HPoly w1 = d.term(1, t), w2 = d.term(2, t), w3 = d.term(3, t);
    const Vec2 expected{dx1(w1).eval(x) + dx1(w2).eval(x) + dx1(w3).eval(x),
                        dx2(w1).eval(x) + dx2(w2).eval(x) + dx2(w3).eval(x)};
    const Vec2 got = d.grad_at(t, x);
    CHECK(got.x1 == doctest::Approx(expected.x1).epsilon(1e-14));
    CHECK(got.x2 == doctest::Approx(expected.x2).epsilon(1e-14));

    const auto h = d.hessian_at(t, x);
    CHECK(h[0] + h[2] == doctest::Approx(0.0).epsilon(1e-14));  // traceless

    // first x1-Taylor coefficient of grad w equals the Hessian column
    const Vec2 v1 = d.dkx1_grad_at(t, x, 1);
    CHECK(v1.x1 == doctest::Approx(h[0]).epsilon(1e-14));
    CHECK(v1.x2 == doctest::Approx(h[1]).epsilon(1e-14));
}

TEST_CASE("time derivative of the gradient uses analytic coefficients") {
    DriftField d;
    d.set(2, TimePoly{0.0, 1.0}, TimePoly{2.0, -3.0});  // w20 = t, w11 = 2 - 3t
    const Vec2 x{1.0, 2.0};
    // d/dt grad w = grad(w20' (x1^2-x2^2) + w11' x1 x2), w20' = 1, w11' = -3
    const Vec2 expect{2.0 * x.x1 * 1.0 + x.x2 * (-3.0),
                      -2.0 * x.x2 * 1.0 + x.x1 * (-3.0)};
    const Vec2 got = d.grad_dt_at(0.7, x);
    CHECK(got.x1 == doctest::Approx(expect.x1));
    CHECK(got.x2 == doctest::Approx(expect.x2));
}

}  // TEST_SUITE
