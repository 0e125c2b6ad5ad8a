#include <doctest.h>

#include <cmath>

#include "singdyn/chain1d.hpp"
#include "singdyn/refsolver.hpp"

using namespace singdyn;

namespace {

double grid_mass(const FieldGrid& g) {
    double m = 0.0;
    for (double v : g.values) m += v;
    return m * g.dx;
}

double max_error_vs_exact(const FieldGrid& g, double eta) {
    double m = 0.0;
    for (size_t i = 0; i < g.size(); ++i)
        m = std::max(m, std::abs(g.values[i] - exact_wave(eta, g.coord(i), g.time)));
    return m;
}

}  // namespace

TEST_SUITE("refsolver") {

TEST_CASE("front extraction: exact node hit") {
    FieldGrid g = make_grid_1d(0.0, 1.0, 8, 0.0);
    g.values = {0.9, 0.8, 0.6, 0.4, 0.3, 0.2, 0.0, 0.0};
    const auto xs = extract_front(g);
    REQUIRE(xs.size() == 1);
    CHECK(xs[0] == doctest::Approx(g.coord(6)).epsilon(1e-14));
}

TEST_CASE("front extraction: linear interpolation") {
    FieldGrid g = make_grid_1d(0.0, 1.0, 8, 0.2);
    g.dx = 1.0;  // values 0.3 at x=0, 0.1 at x=1 per the contract example
    g.values.assign(8, 0.1);
    g.values[0] = 0.3;
    const auto xs = extract_front(g);
    CHECK(xs[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("front extraction: no crossing") {
    FieldGrid g = make_grid_1d(0.0, 1.0, 8, 0.0);
    g.values.assign(8, 1.0);
    CHECK_THROWS_AS(extract_front(g), NoCrossingError);
}

TEST_CASE("front extraction on sampled exact waves is within one cell") {
    for (double t : {1.0, 1.7}) {
        const FieldGrid g = sample_exact_wave(1.0, t, -2.0, 2.0, 512);
        const double f = std::cbrt(t);
        CHECK(std::abs(front_position(g, FrontSide::Left) - (-f)) <= g.dx);
        CHECK(std::abs(front_position(g, FrontSide::Right) - f) <= g.dx);
    }
}

TEST_CASE("zero field stays zero") {
    const FieldGrid g0 = make_grid_1d(-1.0, 1.0, 64, 0.0);
    const RefTrajectory traj = solve_model_1d(g0, 0.5);
    for (double v : traj.snapshots.back().values) CHECK(v == 0.0);
}

TEST_CASE("model equation converges to the exact wave under refinement") {
    double prev = 0.0;
    double dx_prev = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const size_t n = pass == 0 ? 256 : 512;
        const FieldGrid g0 = sample_exact_wave(1.0, 1.0, -2.0, 2.0, n);
        const RefTrajectory traj = solve_model_1d(g0, 2.0);
        const double err = max_error_vs_exact(traj.snapshots.back(), 1.0);
        if (pass == 1) {
            const double order = std::log2(prev / err);
            CHECK(order >= 0.8);
        }
        prev = err;
        dx_prev = g0.dx;
        (void)dx_prev;
    }
}

TEST_CASE("mass is conserved to rounding while the support is interior") {
    const FieldGrid g0 = sample_exact_wave(1.0, 1.0, -3.0, 3.0, 512);
    const double m0 = grid_mass(g0);
    const RefTrajectory traj = solve_model_1d(g0, 2.0);
    const double m1 = grid_mass(traj.snapshots.back());
    CHECK(std::abs(m1 - m0) / m0 <= 1e-12);
}

TEST_CASE("support contact with the boundary aborts") {
    // domain barely larger than the initial support: the wave must hit the edge
    const FieldGrid g0 = sample_exact_wave(1.0, 1.0, -1.05, 1.05, 256);
    CHECK_THROWS_AS(solve_model_1d(g0, 3.0), BoundaryContactError);
}

TEST_CASE("negative initial data is rejected") {
    FieldGrid g = make_grid_1d(-1.0, 1.0, 64, 0.0);
    g.values[32] = -0.1;
    CHECK_THROWS_AS(solve_model_1d(g, 1.0), Error);
}

TEST_CASE("radial: constant field is stationary") {
    const FieldGrid g0 = make_grid_radial(2.0, 128, 0.5);
    const RefTrajectory traj = solve_reduced_2d_radial(g0, 1.0, 0.3);
    for (size_t i = 0; i < g0.size(); ++i)
        CHECK(traj.snapshots.back().values[i] == 0.5);
}

TEST_CASE("radial: data above the degeneration level is rejected") {
    FieldGrid g = make_grid_radial(2.0, 128, 0.5);
    g.values[10] = 0.6;
    CHECK_THROWS_AS(solve_reduced_2d_radial(g, 1.0, 0.1), Error);
}

TEST_CASE("radial cap front expands monotonically") {
    RefOptions opt;
    opt.front_record_dt = 0.01;
    const RefTrajectory traj =
        solve_reduced_2d_radial(radial_cap(1.0, 0.25, 0.6, 2.5, 512), 1.0, 0.3, opt);
    REQUIRE(traj.front.size() >= 10);
    for (size_t i = 1; i < traj.front.size(); ++i)
        CHECK(traj.front[i].second >= traj.front[i - 1].second - 1e-12);
    CHECK(traj.front.back().second > 0.6);
}

TEST_CASE("mu-rescaling symmetry: (c, mu) and (c/2, 2 mu) coincide") {
    const FieldGrid a0 = radial_cap(1.0, 0.25, 0.6, 2.5, 256);
    const FieldGrid b0 = radial_cap(2.0, 0.125, 0.6, 2.5, 256);
    const RefTrajectory a = solve_reduced_2d_radial(a0, 1.0, 0.2);
    const RefTrajectory b = solve_reduced_2d_radial(b0, 2.0, 0.2);
    REQUIRE(a.snapshots.back().size() == b.snapshots.back().size());
    for (size_t i = 0; i < a.snapshots.back().size(); ++i)
        CHECK(b.snapshots.back().values[i] ==
              doctest::Approx(0.5 * a.snapshots.back().values[i]).epsilon(1e-13));
}

}  // TEST_SUITE
