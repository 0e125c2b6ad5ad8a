#include "singdyn/acceptance.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "singdyn/chain1d.hpp"
#include "singdyn/harmonic.hpp"
#include "singdyn/heatwave2d.hpp"
#include "singdyn/hpoly.hpp"
#include "singdyn/refsolver.hpp"
#include "singdyn/scenario.hpp"
#include "singdyn/vortex.hpp"

namespace singdyn {

namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

double lstsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double dyadic(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-512, 512);
    return d(rng) / 64.0;
}

VortexState random_admissible_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VortexState s;
    s.mu = 1.25 + 0.75 * u(rng);
    s.c1_0 = (u(rng) > 0 ? 1.0 : -1.0) * (1.2 + 0.8 * u(rng));
    s.phi = 3.1 * u(rng);
    s.sigma = u(rng);
    s.c0_02 = u(rng);
    s.grad_p1_1 = {u(rng), u(rng)};
    for (auto& zi : s.z) zi = 0.5 * u(rng);
    s.a = {u(rng), u(rng)};
    return s;
}

// ------------------------------------------------------------------ criteria

bool criterion_exact_family(std::ostream& os) {
    const auto start = std::chrono::steady_clock::now();
    const ChainRun run = run_chain(exact_chain_state(1.0, 1.0, 3), 1.0, 8.0, 1e-3);
    const double elapsed = seconds_since(start);
    const ChainState1D& end = run.samples.back().state;
    const double e_phi = std::abs(end.phi - (-2.0));
    const double e_a1 = std::abs(end.a[0] - 1.0 / 12.0);
    const double e_a2 = std::abs(end.a[1] - (-1.0 / 48.0));
    const bool ok = e_phi <= 1e-6 && e_a1 <= 1e-6 && e_a2 <= 1e-6 && elapsed < 1.0;
    os << (ok ? "PASS" : "FAIL")
       << "  1. exact-family reproduction: |err| = (" << e_phi << ", " << e_a1 << ", "
       << e_a2 << ") <= 1e-6, " << elapsed << " s < 1 s\n";
    return ok;
}

bool criterion_chain_vs_pde(std::ostream& os) {
    const auto start = std::chrono::steady_clock::now();
    const FieldGrid g0 = sample_exact_wave(1.0, 1.0, -2.0, 2.0, 2048);
    RefOptions opt;
    opt.front_record_dt = 0.05;
    const RefTrajectory fd = solve_model_1d(g0, 2.0, opt);

    const ChainRun chain = run_chain(exact_chain_state(1.0, 1.0, 3), 1.0, 2.0, 1e-3);
    const auto chain_phi = [&](double t) {
        const auto& smp = chain.samples;
        const double u = (t - smp.front().t) / (smp.back().t - smp.front().t);
        const size_t i = std::min(smp.size() - 2,
                                  static_cast<size_t>(std::max(0.0, u) * (smp.size() - 1)));
        const double w = (t - smp[i].t) / (smp[i + 1].t - smp[i].t);
        return smp[i].state.phi * (1.0 - w) + smp[i + 1].state.phi * w;
    };

    double worst_exact = 0.0, worst_chain = 0.0;
    for (const auto& [t, x] : fd.front) {
        worst_exact = std::max(worst_exact, std::abs(x - (-std::cbrt(t))));
        worst_chain = std::max(worst_chain, std::abs(x - chain_phi(t)));
    }
    const double elapsed = seconds_since(start);
    const double cells2 = 2.0 * g0.dx;
    const bool ok = !fd.front.empty() && worst_exact <= cells2 && worst_chain <= cells2 &&
                    elapsed < 30.0;
    os << (ok ? "PASS" : "FAIL")
       << "  2. chain-vs-PDE front agreement: max dev vs -t^(1/3) = "
       << worst_exact / g0.dx << " cells, vs chain = " << worst_chain / g0.dx
       << " cells (<= 2), " << elapsed << " s < 30 s\n";
    return ok;
}

bool criterion_velocity_law(std::ostream& os) {
    const auto start = std::chrono::steady_clock::now();
    const double mu = 1.0;
    const std::vector<double> eval_times{0.25, 0.30, 0.35, 0.40, 0.45};
    RefOptions opt;
    opt.front_record_dt = 0.005;
    opt.snapshot_times = eval_times;
    const FieldGrid g0 = radial_cap(mu, 0.25, 0.6, 3.0, 1536);
    const RefTrajectory traj = solve_reduced_2d_radial(g0, mu, 0.6, opt);

    double worst = 0.0;
    bool ok = true;
    for (double tstar : eval_times) {
        // measured front speed: least-squares slope over a +-0.05 window
        std::vector<double> ts, rs;
        for (const auto& [t, r] : traj.front)
            if (std::abs(t - tstar) <= 0.05 + 1e-12) {
                ts.push_back(t);
                rs.push_back(r);
            }
        if (ts.size() < 5) {
            ok = false;
            break;
        }
        const double v_measured = lstsq_slope(ts, rs);

        // predicted speed: 2 mu * inward-limit normal derivative of c
        const FieldGrid* snap = nullptr;
        for (const auto& g : traj.snapshots)
            if (std::abs(g.time - tstar) < 1e-9) snap = &g;
        if (!snap) {
            ok = false;
            break;
        }
        const double rf = front_position(*snap, FrontSide::Right, 1e-6 * field_amplitude(*snap));
        std::vector<double> xs, cs;
        for (size_t i = 0; i < snap->size(); ++i) {
            const double r = snap->coord(i);
            if (r >= rf - 10.0 * snap->dx && r <= rf - 2.0 * snap->dx) {
                xs.push_back(r);
                cs.push_back(snap->values[i]);
            }
        }
        const double dc_dnu = lstsq_slope(xs, cs);  // inward limit along +r
        const double v_pred = normal_velocity(dc_dnu, 0.0, mu);
        const double rel = std::abs(v_measured - v_pred) / std::abs(v_pred);
        worst = std::max(worst, rel);
        if (!(rel <= 0.05)) ok = false;
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 60.0;
    os << (ok ? "PASS" : "FAIL")
       << "  3. front-velocity law: worst relative speed mismatch = " << worst
       << " (<= 0.05), " << elapsed << " s < 60 s\n";
    return ok;
}

bool criterion_vortex_oracle(std::ostream& os) {
    const auto start = std::chrono::steady_clock::now();
    VortexState s0;
    s0.mu = 1.0;
    s0.phi = 0.7;
    s0.c1_0 = 0.8;
    s0.sigma = 0.3;
    s0.c0_02 = 0.1;
    s0.grad_p1_1 = {0.2, -0.1};
    const DriftField drift;  // omega = 0
    const double t1 = 0.4;

    const std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
    std::vector<ConsistencyReport> reports;
    double closure_worst = 0.0;
    for (double dt : dts) {
        const VortexTrajectory traj = run_vortex(s0, drift, 0.0, t1, dt);
        reports.push_back(consistency_residuals(traj, drift));
        for (double c : reports.back().closure_identity)
            closure_worst = std::max(closure_worst, c);
    }

    bool ok = closure_worst < 1e-10;
    double min_order = 1e9;
    const auto check_orders = [&](std::function<double(const ConsistencyReport&)> get) {
        for (size_t i = 0; i + 1 < reports.size(); ++i) {
            const double r0 = get(reports[i]);
            const double r1 = get(reports[i + 1]);
            const double order = std::log2(r0 / r1);
            min_order = std::min(min_order, order);
            if (!(order >= 1.8)) ok = false;
        }
    };
    for (int k = 4; k <= 5; ++k)
        check_orders([k](const ConsistencyReport& r) { return r.max_singular(k); });
    for (int k = 0; k <= 2; ++k)
        check_orders([k](const ConsistencyReport& r) { return r.max_smooth(k); });

    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 10.0;
    os << (ok ? "PASS" : "FAIL")
       << "  4. vortex defining-equation oracle: measured order >= " << min_order
       << " (>= 1.8), closure identity " << closure_worst << " < 1e-10, " << elapsed
       << " s < 10 s\n";
    return ok;
}

bool criterion_equivariance(std::ostream& os) {
    VortexState s0;
    s0.mu = 1.0;
    s0.phi = 0.4;
    s0.c1_0 = 0.9;
    s0.sigma = 0.25;
    s0.c0_02 = 0.05;
    s0.grad_p1_1 = {0.15, 0.1};
    s0.a = {0.3, -0.2};
    const DriftField drift;
    const double dt = 1e-3, t1 = 1.0;
    const VortexTrajectory base = run_vortex(s0, drift, 0.0, t1, dt);

    double worst = 0.0;
    for (double theta : {M_PI / 6.0, M_PI / 2.0, M_PI}) {
        const VortexTrajectory rot = run_vortex(rotate_state(s0, theta), drift, 0.0, t1, dt);
        const double c = std::cos(theta), sn = std::sin(theta);
        for (size_t i = 0; i < base.samples.size(); ++i) {
            const Vec2 p = -1.0 * base.samples[i].state.a;
            const Vec2 expected{c * p.x1 - sn * p.x2, sn * p.x1 + c * p.x2};
            const Vec2 got = -1.0 * rot.samples[i].state.a;
            worst = std::max({worst, std::abs(got.x1 - expected.x1),
                              std::abs(got.x2 - expected.x2)});
        }
    }
    const bool ok = worst < 1e-8;
    os << (ok ? "PASS" : "FAIL")
       << "  5. rotation equivariance: max trajectory deviation = " << worst
       << " < 1e-8\n";
    return ok;
}

bool criterion_c10_cross_form(std::ostream& os) {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        VortexState s = random_admissible_state(rng);
        DriftField drift;
        drift.set(2, TimePoly{u(rng), u(rng)}, TimePoly{u(rng), u(rng)});
        const double t = u(rng);
        const CascadeBundle b = build_cascade(s, drift, t);
        const double viaQuadratic = b.c1_0_dot;
        const double viaClosedForm = c1_0_dot_closed_form(s, drift, t);
        const double rel = std::abs(viaQuadratic - viaClosedForm) /
                           std::max(1e-30, std::abs(viaClosedForm));
        worst = std::max(worst, rel);
    }
    const bool ok = worst <= 1e-12;
    os << (ok ? "PASS" : "FAIL")
       << "  6. c1_0-dot cross-form consistency: worst relative difference = " << worst
       << " <= 1e-12 (1000 states)\n";
    return ok;
}

bool criterion_algebraic_invariants(std::ostream& os) {
    std::mt19937 rng(42);
    bool euler_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 6;
        HPoly p(n);
        for (int j = 0; j <= n; ++j) p.coeff(j) = dyadic(rng);
        const HPoly lhs = dot(HPolyVec(HPoly::linear({1, 0}), HPoly::linear({0, 1})),
                              grad(p));
        for (int j = 0; j <= n; ++j)
            if (lhs.coeff(j) != static_cast<double>(n) * p.coeff(j)) euler_ok = false;
    }

    bool harmonic_ok = true;
    for (int k = 0; k <= 6; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            DriftField d;
            d.set(k, TimePoly{dyadic(rng), dyadic(rng)},
                  TimePoly{dyadic(rng), dyadic(rng)});
            const HPoly wk = d.term(k, 0.5);
            if (!laplacian(wk).is_zero()) harmonic_ok = false;
        }
    }

    bool det_ok = true;
    double det_worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const VortexState s = random_admissible_state(rng);
        const double c010 = s.c1_0 * std::sin(s.phi);
        const double c001 = s.c1_0 * std::cos(s.phi);
        const double detA = c001 * c001 + c010 * c010;
        const double relA = std::abs(detA - s.c1_0 * s.c1_0) / (s.c1_0 * s.c1_0);
        // B1 rows: (7 c010, 6 c001) and (-5 c001, 6 c010)
        const double detB1 = 7.0 * c010 * 6.0 * c010 - 6.0 * c001 * (-5.0 * c001);
        const CascadeBundle b = build_cascade(s, DriftField{}, 0.0);
        const double relB = std::abs(detB1 - 6.0 * b.d) / std::abs(6.0 * b.d);
        det_worst = std::max({det_worst, relA, relB});
        if (relA > 1e-12 || relB > 1e-12) det_ok = false;
    }

    const bool ok = euler_ok && harmonic_ok && det_ok;
    os << (ok ? "PASS" : "FAIL")
       << "  7. algebraic invariants: Euler identity "
       << (euler_ok ? "exact" : "VIOLATED") << ", harmonic Laplacians "
       << (harmonic_ok ? "zero" : "NONZERO") << ", determinant identities worst rel = "
       << det_worst << " <= 1e-12\n";
    return ok;
}

bool criterion_determinism(std::ostream& os, const std::string& scenarios_dir) {
    std::vector<fs::path> configs;
    if (fs::is_directory(scenarios_dir))
        for (const auto& e : fs::directory_iterator(scenarios_dir))
            if (e.path().extension() == ".json") configs.push_back(e.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        os << "FAIL  8. determinism: no bundled scenarios found in '" << scenarios_dir
           << "'\n";
        return false;
    }

    const auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    bool ok = true;
    std::string detail;
    const fs::path scratch =
        fs::temp_directory_path() / ("singdyn_accept_" + std::to_string(::getpid()));
    for (const auto& cfg : configs) {
        const fs::path d1 = scratch / (cfg.stem().string() + "_1");
        const fs::path d2 = scratch / (cfg.stem().string() + "_2");
        const ScenarioResult r1 = run_scenario(cfg.string(), d1.string());
        const ScenarioResult r2 = run_scenario(cfg.string(), d2.string());
        if (r1.exit_code != 0 || r2.exit_code != 0) {
            ok = false;
            detail = cfg.filename().string() + " failed to run: " + r1.error;
            break;
        }
        for (const auto& name : r1.artifacts)
            if (slurp(d1 / name) != slurp(d2 / name)) {
                ok = false;
                detail = cfg.filename().string() + " artifact " + name + " differs";
            }
    }
    std::error_code ec;
    fs::remove_all(scratch, ec);
    os << (ok ? "PASS" : "FAIL") << "  8. determinism: " << configs.size()
       << " bundled scenarios run twice, byte-identical artifacts"
       << (detail.empty() ? "" : " [" + detail + "]") << "\n";
    return ok;
}

}  // namespace

bool run_acceptance(std::ostream& os, const std::string& scenarios_dir) {
    bool ok = true;
    ok &= criterion_exact_family(os);
    ok &= criterion_chain_vs_pde(os);
    ok &= criterion_velocity_law(os);
    ok &= criterion_vortex_oracle(os);
    ok &= criterion_equivariance(os);
    ok &= criterion_c10_cross_form(os);
    ok &= criterion_algebraic_invariants(os);
    ok &= criterion_determinism(os, scenarios_dir);
    os << (ok ? "ACCEPTANCE: all criteria passed\n"
              : "ACCEPTANCE: criteria FAILED\n");
    return ok;
}

}  // namespace singdyn
