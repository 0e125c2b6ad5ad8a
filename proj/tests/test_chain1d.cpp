#include <doctest.h>

#include <cmath>
#include <random>

#include "singdyn/chain1d.hpp"
#include "singdyn/refsolver.hpp"

using namespace singdyn;

namespace {

// Brute-force substitution oracle: push the expansion through the model
// equation using generic truncated power-series arithmetic in s = x - phi
// (convolution and term-by-term differentiation), then compare coefficients.
// Independent of the closed-form recurrence in chain_rhs.
std::vector<double> series_derivative(const std::vector<double>& c) {
    std::vector<double> d(c.size(), 0.0);
    for (size_t k = 0; k + 1 < c.size(); ++k) d[k] = (k + 1) * c[k + 1];
    return d;
}

std::vector<double> substitution_residual(const ChainState1D& s, const ChainDeriv& d) {
    const size_t n = s.a.size();
    std::vector<double> u(2 * n + 3, 0.0);
    for (size_t k = 1; k <= n; ++k) u[k] = s.a[k - 1];

    std::vector<double> u2(u.size(), 0.0);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; i + j < u.size(); ++j) u2[i + j] += u[i] * u[j];
    const std::vector<double> rhs = series_derivative(series_derivative(u2));

    // d/dt sum a_k s_+^k = sum (a_k' - phi' (k+1) a_{k+1}) s_+^k
    std::vector<double> res(n + 1, 0.0);
    for (size_t k = 0; k <= n; ++k) {
        const double adot = (k >= 1) ? d.a_dot[k - 1] : 0.0;
        const double anext = (k + 1 <= n) ? s.a[k] : 0.0;
        res[k] = adot - d.phi_dot * (k + 1) * anext - 0.5 * rhs[k];
    }
    return res;
}

double linf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_SUITE("chain1d") {

TEST_CASE("low-order right-hand side values") {
    const ChainDeriv d = chain_rhs({0.0, {1.0, 1.0, 0.0}});
    CHECK(d.phi_dot == -1.0);
    CHECK(d.a_dot[0] == 4.0);
    CHECK(d.a_dot[1] == 6.0);

    const ChainDeriv zero = chain_rhs({2.0, {0.0, 0.0, 0.0, 0.0}});
    CHECK(zero.phi_dot == 0.0);
    CHECK(linf(zero.a_dot) == 0.0);
}

TEST_CASE("recurrence matches the closed low-order forms exactly") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> di(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
        const double a1 = di(rng), a2 = di(rng), a3 = di(rng);
        const ChainDeriv d = chain_rhs({0.0, {a1, a2, a3}});
        CHECK(d.a_dot[0] == 4.0 * a1 * a2);
        CHECK(d.a_dot[1] == 3.0 * (2.0 * a2 * a2 + 3.0 * a1 * a3));
    }
}

TEST_CASE("order-3 value pinned and the substitution oracle closes") {
    const ChainState1D s{0.0, {2.0, 3.0, 1.0, 0.0}};
    const ChainDeriv d = chain_rhs(s);
    CHECK(d.a_dot[1] == 72.0);
    CHECK(linf(substitution_residual(s, d)) == 0.0);
}

TEST_CASE("substitution oracle on random states up to order 6") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            ChainState1D s{u(rng), {}};
            s.a.resize(n);
            for (double& v : s.a) v = u(rng);
            const ChainDeriv d = chain_rhs(s);
            CHECK(linf(substitution_residual(s, d)) <= 1e-13);
        }
    }
}

TEST_CASE("scaling covariance of the right-hand side") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        ChainState1D s{0.0, {u(rng), u(rng), u(rng), u(rng)}};
        ChainState1D s2 = s;
        for (double& v : s2.a) v *= 2.0;  // power of two: exact in IEEE
        const ChainDeriv d = chain_rhs(s);
        const ChainDeriv d2 = chain_rhs(s2);
        CHECK(d2.phi_dot == 2.0 * d.phi_dot);
        for (size_t k = 0; k < s.a.size(); ++k)
            CHECK(d2.a_dot[k] == 4.0 * d.a_dot[k]);
    }
}

TEST_CASE("exact wave evaluation") {
    CHECK(exact_wave(1.0, 0.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(exact_wave(1.0, 1.0, 1.0) == 0.0);
    CHECK(exact_wave(1.0, -1.0, 1.0) == 0.0);
    CHECK(exact_wave(1.0, 2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(exact_wave(1.0, 0.0, 0.0), Error);
    CHECK_THROWS_AS(exact_wave(1.0, 0.0, -1.0), Error);

    const ExactWaveParams p{2.0, 1.0};
    CHECK(exact_wave(p, 0.5, 2.0) == exact_wave(2.0, 0.5, 2.0));
    CHECK_THROWS_AS(exact_wave(ExactWaveParams{-1.0, 1.0}, 0.0, 1.0), Error);
}

TEST_CASE("exact wave satisfies the model equation strictly inside the support") {
    const double eta = 1.0, t = 1.5;
    const double front = eta * std::cbrt(t);
    for (double xf : {0.0, 0.35, -0.55}) {
        const double x = xf * front;
        double prev = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            const double h = pass == 0 ? 1e-3 : 5e-4;
            const double ut = (exact_wave(eta, x, t + h) - exact_wave(eta, x, t - h)) / (2 * h);
            const auto u2 = [&](double xx) {
                const double v = exact_wave(eta, xx, t);
                return v * v;
            };
            const double uxx = (u2(x + h) - 2.0 * u2(x) + u2(x - h)) / (h * h);
            const double res = std::abs(ut - 0.5 * uxx);
            if (pass == 1) CHECK(res < 0.3 * prev + 1e-12);
            prev = res;
        }
    }
}

TEST_CASE("special-family trajectory hits the exact values at t = 8") {
    const ChainRun run = run_chain(exact_chain_state(1.0, 1.0, 3), 1.0, 8.0, 1e-3);
    const ChainState1D& end = run.samples.back().state;
    CHECK(std::abs(end.phi - (-2.0)) <= 1e-6);
    CHECK(std::abs(end.a[0] - 1.0 / 12.0) <= 1e-6);
    CHECK(std::abs(end.a[1] - (-1.0 / 48.0)) <= 1e-6);
    CHECK(!run.a1_sign_change_time.has_value());
}

TEST_CASE("rest state stays at rest") {
    const ChainRun run = run_chain({1.5, {0.0, 0.0}}, 0.5, 1.5, 1e-2);
    for (const auto& s : run.samples) {
        CHECK(s.state.phi == 1.5);
        CHECK(linf(s.state.a) == 0.0);
    }
}

TEST_CASE("integrator convergence order on the exact family is >= 3.5") {
    const auto err = [](double dt) {
        const ChainRun run = run_chain(exact_chain_state(1.0, 1.0, 3), 1.0, 2.0, dt);
        const ChainState1D& end = run.samples.back().state;
        return std::abs(end.a[0] - 1.0 / (3.0 * std::cbrt(4.0)));
    };
    const double e1 = err(0.05), e2 = err(0.025);
    CHECK(std::log2(e1 / e2) >= 3.5);
}

TEST_CASE("trajectory scaling covariance under amplitude/time rescaling") {
    const double lambda = 2.0, t0 = 1.0, dt = 1e-3, T = 0.5;
    ChainState1D s0 = exact_chain_state(1.0, t0, 3);
    ChainState1D s0l = s0;
    for (double& v : s0l.a) v *= lambda;
    const ChainRun a = run_chain(s0, t0, t0 + T, dt);
    const ChainRun b = run_chain(s0l, t0, t0 + T / lambda, dt / lambda);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); i += 50) {
        CHECK(b.samples[i].state.phi ==
              doctest::Approx(a.samples[i].state.phi).epsilon(1e-12));
        for (size_t k = 0; k < 3; ++k)
            CHECK(b.samples[i].state.a[k] ==
                  doctest::Approx(lambda * a.samples[i].state.a[k]).epsilon(1e-12));
    }
}

TEST_CASE("blow-up is reported as NonFinite") {
    CHECK_THROWS_AS(run_chain({0.0, {50.0, 50.0, 50.0}}, 0.1, 10.0, 1e-2),
                    NonFiniteError);
    CHECK_THROWS_AS(run_chain({0.0, {1.0}}, 0.0, 1.0, 1e-2), Error);
}

TEST_CASE("free boundary residual on consistent and perturbed data") {
    const auto r0 = free_boundary_residual(0.0, -0.5, -0.5);
    CHECK(r0.valueeq == 0.0);
    CHECK(r0.velocityeq == 0.0);
    const auto r1 = free_boundary_residual(0.1, 1.0, 1.0);
    CHECK(r1.valueeq == doctest::Approx(0.1));
    CHECK(r1.velocityeq == 0.0);
}

TEST_CASE("free boundary residuals vanish under grid refinement of the reference solution") {
    double prev_val = 0.0, prev_vel = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const size_t n = pass == 0 ? 512 : 1024;
        RefOptions opt;
        opt.front_record_dt = 0.02;
        const RefTrajectory traj =
            solve_model_1d(sample_exact_wave(1.0, 1.0, -2.0, 2.0, n), 1.5, opt);
        const FieldGrid& g = traj.snapshots.back();

        const auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = static_cast<double>(x.size());
            for (size_t k = 0; k < x.size(); ++k) {
                sx += x[k];
                sy += y[k];
                sxx += x[k] * x[k];
                sxy += x[k] * y[k];
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };

        // left front, outward normal points to -x: du/dnu = -u_x
        const double xf = front_position(g, FrontSide::Left, 1e-6 * field_amplitude(g));
        const size_t i = static_cast<size_t>((xf - g.x0) / g.dx);
        const double w = (xf - g.coord(i)) / g.dx;
        const double u_front = g.values[i] * (1.0 - w) + g.values[i + 1] * w;
        std::vector<double> xs, us;
        for (size_t k = i + 1; k <= i + 6; ++k) {
            xs.push_back(g.coord(k));
            us.push_back(g.values[k]);
        }
        const double ux = slope(xs, us);

        // front velocity: least-squares over the trailing window of the series
        std::vector<double> ts, fs;
        for (const auto& [t, x] : traj.front)
            if (t >= 1.3) {
                ts.push_back(t);
                fs.push_back(x);
            }
        REQUIRE(ts.size() >= 5);
        const double phidot = slope(ts, fs);

        const auto r = free_boundary_residual(u_front, -ux, phidot);
        CHECK(std::abs(r.valueeq) < 1e-5);  // vs field scale ~0.15
        if (pass == 1) {
            CHECK(std::abs(r.velocityeq) < std::abs(prev_vel));
            CHECK(std::abs(r.velocityeq) < 0.08);
        }
        prev_val = r.valueeq;
        prev_vel = r.velocityeq;
        (void)prev_val;
    }
}

}  // TEST_SUITE
