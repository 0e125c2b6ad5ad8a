#include "singdyn/refsolver.hpp"

#include <algorithm>
#include <cmath>

#include "singdyn/chain1d.hpp"

namespace singdyn {

FieldGrid make_grid_1d(double x0, double x1, size_t nodes, double level) {
    if (nodes < 8 || !(x1 > x0)) throw Error("make_grid_1d: bad grid");
    FieldGrid g;
    g.geometry = GridGeometry::Line1D;
    g.x0 = x0;
    g.dx = (x1 - x0) / static_cast<double>(nodes - 1);
    g.values.assign(nodes, level);
    g.level = level;
    return g;
}

FieldGrid make_grid_radial(double rmax, size_t nodes, double level) {
    if (nodes < 8 || !(rmax > 0.0)) throw Error("make_grid_radial: bad grid");
    FieldGrid g;
    g.geometry = GridGeometry::Radial2D;
    g.x0 = 0.0;
    g.dx = rmax / static_cast<double>(nodes - 1);
    g.values.assign(nodes, level);
    g.level = level;
    return g;
}

FieldGrid sample_exact_wave(double eta, double t, double x0, double x1, size_t nodes) {
    FieldGrid g = make_grid_1d(x0, x1, nodes, 0.0);
    g.time = t;
    for (size_t i = 0; i < nodes; ++i) g.values[i] = exact_wave(eta, g.coord(i), t);
    return g;
}

FieldGrid radial_cap(double mu, double depth, double radius, double rmax, size_t nodes) {
    if (!(mu > 0.0) || !(depth > 0.0) || !(radius > 0.0) || !(radius < rmax))
        throw Error("radial_cap: bad parameters");
    const double level = 0.5 / mu;
    if (depth > level) throw Error("radial_cap: depth would drive c below 0");
    FieldGrid g = make_grid_radial(rmax, nodes, level);
    for (size_t i = 0; i < nodes; ++i) {
        const double r = g.coord(i);
        if (r < radius) {
            const double s = 1.0 - (r / radius) * (r / radius);
            g.values[i] = level - depth * s * s;
        }
    }
    return g;
}

namespace {

struct StepPlan {
    double dt;
    bool record_front;
    bool snapshot;
};

// shared driver: advances with recomputed CFL-bounded steps, landing exactly
// on snapshot times and t1
template <typename StepFn, typename DiffusivityFn, typename ContactFn>
RefTrajectory run_explicit(FieldGrid g, double t1, const RefOptions& opt,
                           StepFn step, DiffusivityFn max_diffusivity,
                           ContactFn boundary_contact) {
    RefTrajectory traj;
    std::vector<double> snaps = opt.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= g.time) ++next_snap;

    double next_front_t = g.time;
    const auto record_front = [&](const FieldGrid& gg) {
        try {
            const double eps = opt.front_threshold_rel * field_amplitude(gg);
            const auto xs = extract_front(gg, eps);
            const double pos = (gg.geometry == GridGeometry::Radial2D)
                                   ? xs.back()
                                   : xs.front();
            traj.front.emplace_back(gg.time, pos);
        } catch (const NoCrossingError&) {
            // front not formed yet; skip the sample
        }
    };
    if (opt.front_record_dt > 0.0) {
        record_front(g);
        next_front_t = g.time + opt.front_record_dt;
    }

    long long guard = 0;
    while (g.time < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
        if (boundary_contact(g))
            throw BoundaryContactError("refsolver: support reached the grid boundary");
        const double kmax = max_diffusivity(g);
        double dt = (kmax > 0.0)
                        ? opt.cfl_fraction * g.dx * g.dx / (2.0 * kmax)
                        : (t1 - g.time);
        if (!(dt > 0.0)) throw Error("refsolver: CFL step collapsed");
        bool take_snapshot = false;
        if (next_snap < snaps.size() && g.time + dt >= snaps[next_snap]) {
            dt = snaps[next_snap] - g.time;
            take_snapshot = true;
        }
        if (g.time + dt > t1) dt = t1 - g.time;
        if (dt > 0.0) step(g, dt);
        g.time += dt;
        traj.last_dt = dt;
        ++traj.steps;
        if (++guard > 500'000'000LL) throw Error("refsolver: step limit exceeded");

        if (take_snapshot) {
            traj.snapshots.push_back(g);
            ++next_snap;
        }
        while (opt.front_record_dt > 0.0 && g.time >= next_front_t - 1e-14) {
            record_front(g);
            next_front_t += opt.front_record_dt;
        }
    }
    if (boundary_contact(g))
        throw BoundaryContactError("refsolver: support reached the grid boundary");
    traj.snapshots.push_back(g);
    if (opt.front_record_dt == 0.0) record_front(g);
    return traj;
}

}  // namespace

RefTrajectory solve_model_1d(const FieldGrid& initial, double t1,
                             const RefOptions& options) {
    if (initial.geometry != GridGeometry::Line1D)
        throw Error("solve_model_1d: 1D grid expected");
    for (double v : initial.values)
        if (v < 0.0) throw Error("solve_model_1d: u must be nonnegative");

    std::vector<double> flux(initial.size() + 1, 0.0);
    const auto step = [&flux](FieldGrid& g, double dt) {
        auto& u = g.values;
        const size_t n = u.size();
        const double r = dt / (g.dx * g.dx);
        // interface flux k_{i+1/2} (u_{i+1} - u_i), k = arithmetic mean of u
        for (size_t i = 0; i + 1 < n; ++i)
            flux[i + 1] = 0.5 * (u[i] + u[i + 1]) * (u[i + 1] - u[i]);
        flux[0] = flux[n] = 0.0;
        for (size_t i = 0; i < n; ++i) u[i] += r * (flux[i + 1] - flux[i]);
    };
    const auto kmax = [](const FieldGrid& g) {
        double m = 0.0;
        for (double v : g.values) m = std::max(m, v);
        return m;
    };
    const auto contact = [&options](const FieldGrid& g) {
        return std::abs(g.values.front()) > options.boundary_tolerance ||
               std::abs(g.values.back()) > options.boundary_tolerance;
    };
    return run_explicit(initial, t1, options, step, kmax, contact);
}

RefTrajectory solve_reduced_2d_radial(const FieldGrid& initial, double mu, double t1,
                                      const RefOptions& options) {
    if (initial.geometry != GridGeometry::Radial2D)
        throw Error("solve_reduced_2d_radial: radial grid expected");
    if (!(mu > 0.0)) throw Error("solve_reduced_2d_radial: mu > 0 required");
    const double level = 0.5 / mu;
    for (double v : initial.values)
        if (v > level + 1e-12)
            throw Error("solve_reduced_2d_radial: c above the degeneration level "
                        "(backward-parabolic regime)");

    std::vector<double> kdiff;
    const auto step = [&kdiff, mu](FieldGrid& g, double dt) {
        auto& c = g.values;
        const size_t n = c.size();
        kdiff.resize(n);
        for (size_t i = 0; i < n; ++i) kdiff[i] = 1.0 - 2.0 * mu * c[i];
        const double dr = g.dx;
        const double r = dt / (dr * dr);
        std::vector<double> next(c);
        // r = 0 by symmetry: c_t = 4 k_{1/2} (c_1 - c_0) / dr^2 (2D Laplacian)
        {
            const double kh = std::max(0.0, 0.5 * (kdiff[0] + kdiff[1]));
            next[0] = c[0] + 4.0 * r * kh * (c[1] - c[0]);
        }
        for (size_t i = 1; i + 1 < n; ++i) {
            const double ri = static_cast<double>(i);
            const double kp = std::max(0.0, 0.5 * (kdiff[i] + kdiff[i + 1]));
            const double km = std::max(0.0, 0.5 * (kdiff[i] + kdiff[i - 1]));
            next[i] = c[i] + r / ri *
                                 ((ri + 0.5) * kp * (c[i + 1] - c[i]) -
                                  (ri - 0.5) * km * (c[i] - c[i - 1]));
        }
        c.swap(next);
    };
    const auto kmax = [mu](const FieldGrid& g) {
        double m = 0.0;
        for (double v : g.values) m = std::max(m, std::abs(1.0 - 2.0 * mu * v));
        return m;
    };
    const auto contact = [&options, level](const FieldGrid& g) {
        return std::abs(g.values.back() - level) > options.boundary_tolerance;
    };
    FieldGrid init = initial;
    init.level = level;
    return run_explicit(init, t1, options, step, kmax, contact);
}

double field_amplitude(const FieldGrid& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v - g.level));
    return m;
}

std::vector<double> extract_front(const FieldGrid& g, double eps) {
    std::vector<double> crossings;
    const auto& v = g.values;
    double level = g.level;
    if (eps > 0.0) {
        // shift the extraction level toward the interior deviation
        double dev = 0.0;
        for (double val : v)
            if (std::abs(val - g.level) > std::abs(dev)) dev = val - g.level;
        level += (dev >= 0.0 ? eps : -eps);
    }
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const double a = v[i] - level;
        const double b = v[i + 1] - level;
        if (a == 0.0 && b == 0.0) continue;  // plateau exactly on the level
        if (a == 0.0) {
            crossings.push_back(g.coord(i));
        } else if (a * b <= 0.0) {
            crossings.push_back(g.coord(i) + g.dx * a / (a - b));
        }
    }
    // a crossing that lands exactly on a node is seen by both bracketing pairs
    const double tol = 1e-12 * std::max(1.0, std::abs(g.x0) + g.dx * g.size());
    crossings.erase(std::unique(crossings.begin(), crossings.end(),
                                [tol](double a, double b) { return std::abs(a - b) < tol; }),
                    crossings.end());
    if (crossings.empty()) throw NoCrossingError("extract_front: no level crossing");
    return crossings;
}

double front_position(const FieldGrid& g, FrontSide side, double eps) {
    const auto xs = extract_front(g, eps);
    return side == FrontSide::Left ? xs.front() : xs.back();
}

}  // namespace singdyn
