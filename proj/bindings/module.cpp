#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "singdyn/acceptance.hpp"
#include "singdyn/chain1d.hpp"
#include "singdyn/harmonic.hpp"
#include "singdyn/heatwave2d.hpp"
#include "singdyn/refsolver.hpp"
#include "singdyn/scenario.hpp"
#include "singdyn/vortex.hpp"

#include <sstream>

namespace py = pybind11;
using namespace singdyn;

namespace {

DriftField drift_from_dict(const py::dict& d) {
    DriftField drift;
    const auto get = [&](const char* key) -> TimePoly {
        if (!d.contains(key)) return {};
        return TimePoly(d[key].cast<std::vector<double>>());
    };
    drift.set(0, get("w00"), {});
    drift.set(1, get("w10"), get("w01"));
    drift.set(2, get("w20"), get("w11"));
    drift.set(3, get("w30"), get("w03"));
    return drift;
}

}  // namespace

PYBIND11_MODULE(_singdyn, m) {
    m.doc() = "Singularity dynamics of a degenerate parabolic equation: "
              "Hugoniot-type chain integrators, vortex cascade, and a "
              "finite-difference reference solver.";

    py::register_exception<Error>(m, "SingdynError");

    // ---------------------------------------------------------------- chain
    m.def("exact_wave",
          static_cast<double (*)(double, double, double)>(&exact_wave),
          py::arg("eta"), py::arg("x"), py::arg("t"),
          "Exact heat-wave family of the 1D model equation.");

    m.def(
        "chain_rhs",
        [](double phi, const std::vector<double>& a) {
            ChainDeriv d = chain_rhs(ChainState1D{phi, a});
            return py::make_tuple(d.phi_dot, d.a_dot);
        },
        py::arg("phi"), py::arg("a"),
        "Truncated Hugoniot chain right-hand side: (phi_dot, a_dot).");

    m.def(
        "run_chain",
        [](double phi, const std::vector<double>& a, double t0, double t1, double dt) {
            const ChainRun run = run_chain(ChainState1D{phi, a}, t0, t1, dt);
            std::vector<std::vector<double>> rows;
            rows.reserve(run.samples.size());
            for (const auto& s : run.samples) {
                std::vector<double> row{s.t, s.state.phi};
                row.insert(row.end(), s.state.a.begin(), s.state.a.end());
                rows.push_back(std::move(row));
            }
            return rows;
        },
        py::arg("phi"), py::arg("a"), py::arg("t0"), py::arg("t1"), py::arg("dt"),
        "RK4 trajectory; rows are [t, phi, a1..aN].");

    m.def(
        "free_boundary_residual",
        [](double u, double dudnu, double phidot) {
            const auto r = free_boundary_residual(u, dudnu, phidot);
            return py::make_tuple(r.valueeq, r.velocityeq);
        },
        py::arg("u_front_limit"), py::arg("normal_derivative"), py::arg("phi_dot"));

    // ------------------------------------------------------------ heat wave
    m.def("normal_velocity", &normal_velocity, py::arg("dc_dnu"), py::arg("dw_dnu"),
          py::arg("mu"), "Front velocity law v = 2 mu dc/dnu - dw/dnu.");
    m.def("gamma_front_speed", &gamma_front_speed, py::arg("V_nu"), py::arg("a1"),
          py::arg("grad_S_norm"), py::arg("k0"), py::arg("gamma"),
          "Front speed for diffusivity k0 c^gamma.");

    // --------------------------------------------------------------- vortex
    py::class_<VortexState>(m, "VortexState")
        .def(py::init<>())
        .def_property(
            "a", [](const VortexState& s) { return py::make_tuple(s.a.x1, s.a.x2); },
            [](VortexState& s, std::pair<double, double> v) {
                s.a = {v.first, v.second};
            })
        .def_readwrite("phi", &VortexState::phi)
        .def_readwrite("c1_0", &VortexState::c1_0)
        .def_readwrite("sigma", &VortexState::sigma)
        .def_readwrite("c0_02", &VortexState::c0_02)
        .def_property(
            "grad_p1_1",
            [](const VortexState& s) {
                return py::make_tuple(s.grad_p1_1.x1, s.grad_p1_1.x2);
            },
            [](VortexState& s, std::pair<double, double> v) {
                s.grad_p1_1 = {v.first, v.second};
            })
        .def_readwrite("mu", &VortexState::mu);

    m.def(
        "vortex_rhs",
        [](const VortexState& s, const py::dict& drift, double t) {
            const VortexDeriv d = vortex_rhs(s, drift_from_dict(drift), t);
            py::dict out;
            out["a_dot"] = py::make_tuple(d.a_dot.x1, d.a_dot.x2);
            out["phi_dot"] = d.phi_dot;
            out["c1_0_dot"] = d.c1_0_dot;
            out["sigma_dot"] = d.sigma_dot;
            out["c0_02_dot"] = d.c0_02_dot;
            out["grad_p1_1_dot"] =
                py::make_tuple(d.grad_p1_1_dot.x1, d.grad_p1_1_dot.x2);
            return out;
        },
        py::arg("state"), py::arg("drift") = py::dict(), py::arg("t") = 0.0);

    m.def(
        "run_vortex",
        [](const VortexState& s, const py::dict& drift, double t0, double t1, double dt) {
            const VortexTrajectory traj = run_vortex(s, drift_from_dict(drift), t0, t1, dt);
            std::vector<std::vector<double>> rows;
            rows.reserve(traj.samples.size());
            for (const auto& smp : traj.samples)
                rows.push_back({smp.t, smp.state.a.x1, smp.state.a.x2, smp.state.phi,
                                smp.state.c1_0, smp.state.sigma, smp.state.c0_02,
                                smp.state.grad_p1_1.x1, smp.state.grad_p1_1.x2});
            return rows;
        },
        py::arg("state"), py::arg("drift"), py::arg("t0"), py::arg("t1"), py::arg("dt"),
        "Rows are [t, a1, a2, phi, c1_0, sigma, c0_02, p1_10, p1_01].");

    m.def(
        "vortex_consistency",
        [](const VortexState& s, const py::dict& drift, double t0, double t1, double dt) {
            const DriftField d = drift_from_dict(drift);
            const VortexTrajectory traj = run_vortex(s, d, t0, t1, dt);
            const ConsistencyReport rep = consistency_residuals(traj, d);
            py::dict out;
            out["smooth"] = py::make_tuple(rep.max_smooth(0), rep.max_smooth(1),
                                           rep.max_smooth(2));
            out["singular"] = py::make_tuple(rep.max_singular(2), rep.max_singular(3),
                                             rep.max_singular(4), rep.max_singular(5));
            double closure = 0.0;
            for (double c : rep.closure_identity) closure = std::max(closure, c);
            out["closure_identity"] = closure;
            return out;
        },
        py::arg("state"), py::arg("drift"), py::arg("t0"), py::arg("t1"), py::arg("dt"),
        "Max defining-equation residuals per Taylor order along a trajectory.");

    // ------------------------------------------------------------ refsolver
    m.def(
        "solve_model_1d",
        [](double eta, double t_init, double x0, double x1, size_t nodes, double t1) {
            RefOptions opt;
            opt.front_record_dt = (t1 - t_init) / 50.0;
            const RefTrajectory traj =
                solve_model_1d(sample_exact_wave(eta, t_init, x0, x1, nodes), t1, opt);
            const FieldGrid& g = traj.snapshots.back();
            std::vector<double> xs(g.size());
            for (size_t i = 0; i < g.size(); ++i) xs[i] = g.coord(i);
            return py::make_tuple(xs, g.values, traj.front);
        },
        py::arg("eta"), py::arg("t_init"), py::arg("x0"), py::arg("x1"),
        py::arg("nodes"), py::arg("t1"),
        "Returns (x, u(x, t1), [(t, left front)]) for exact-wave initial data.");

    m.def(
        "solve_reduced_radial",
        [](double mu, double depth, double radius, double rmax, size_t nodes, double t1) {
            RefOptions opt;
            opt.front_record_dt = t1 / 50.0;
            const RefTrajectory traj = solve_reduced_2d_radial(
                radial_cap(mu, depth, radius, rmax, nodes), mu, t1, opt);
            const FieldGrid& g = traj.snapshots.back();
            std::vector<double> rs(g.size());
            for (size_t i = 0; i < g.size(); ++i) rs[i] = g.coord(i);
            return py::make_tuple(rs, g.values, traj.front);
        },
        py::arg("mu"), py::arg("depth"), py::arg("radius"), py::arg("rmax"),
        py::arg("nodes"), py::arg("t1"));

    m.def(
        "extract_front",
        [](const std::vector<double>& values, double x0, double dx, double level) {
            FieldGrid g;
            g.x0 = x0;
            g.dx = dx;
            g.values = values;
            g.level = level;
            return extract_front(g);
        },
        py::arg("values"), py::arg("x0"), py::arg("dx"), py::arg("level"),
        "Level crossings of a sampled field.");

    // ------------------------------------------------------------- scenario
    m.def(
        "physical_to_reduced",
        [](double D, double kappa, double beta, double omega) {
            const ReducedParams r = physical_to_reduced(D, kappa, beta, omega);
            return py::make_tuple(r.mu, r.time_scale, r.drift_scale);
        },
        py::arg("D"), py::arg("kappa"), py::arg("beta"), py::arg("omega"),
        "Returns (mu, time_scale, drift_scale).");

    m.def(
        "run_scenario",
        [](const std::string& config, const std::string& out_dir) {
            const ScenarioResult r = run_scenario(config, out_dir);
            return py::make_tuple(r.exit_code, r.artifacts, r.error);
        },
        py::arg("config"), py::arg("out_dir"));

    m.def(
        "run_acceptance",
        [](const std::string& scenarios_dir) {
            std::ostringstream ss;
            const bool ok = run_acceptance(ss, scenarios_dir);
            return py::make_tuple(ok, ss.str());
        },
        py::arg("scenarios_dir") = "scenarios");

    m.attr("__version__") = "0.1.0";
}
