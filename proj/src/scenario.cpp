#include "singdyn/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "singdyn/chain1d.hpp"
#include "singdyn/csv.hpp"
#include "singdyn/harmonic.hpp"
#include "singdyn/heatwave2d.hpp"
#include "singdyn/refsolver.hpp"
#include "singdyn/svg.hpp"
#include "singdyn/vortex.hpp"

namespace singdyn {

namespace fs = std::filesystem;
using nlohmann::json;

ReducedParams physical_to_reduced(double D, double kappa, double beta, double omega) {
    if (!(D > 0.0) || !(kappa > 0.0) || !(beta > 0.0))
        throw ConfigError("physical_to_reduced: D, kappa, beta must be positive");
    if (!(omega > 4.0 / 3.0))
        throw ConfigError(
            "physical_to_reduced: omega must exceed 4/3 (degenerate regime)");
    return {kappa * beta * (3.0 * omega - 4.0) / 2.0, D, kappa};
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError("config: " + msg); }

double need_num(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) bad("missing numeric key '" + key + "'");
    return j[key].get<double>();
}

double opt_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) bad("key '" + key + "' must be numeric");
    return j[key].get<double>();
}

long need_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        bad("missing integer key '" + key + "'");
    return j[key].get<long>();
}

std::vector<double> need_vec(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array()) bad("missing array key '" + key + "'");
    std::vector<double> v;
    for (const auto& e : j[key]) {
        if (!e.is_number()) bad("array '" + key + "' must be numeric");
        v.push_back(e.get<double>());
    }
    return v;
}

double resolve_mu(const json& j) {
    if (j.contains("physical")) {
        const auto& p = j["physical"];
        return physical_to_reduced(need_num(p, "D"), need_num(p, "kappa"),
                                   need_num(p, "beta"), need_num(p, "omega"))
            .mu;
    }
    return need_num(j, "mu");
}

DriftField parse_drift(const json& j) {
    DriftField drift;
    if (!j.contains("drift")) return drift;
    const auto& d = j["drift"];
    if (!d.is_object()) bad("'drift' must be an object");
    // keys w<k0><suffix>: per-degree coefficient pair, polynomial in t
    static const struct {
        const char *a, *b;
        int degree;
    } kKeys[] = {{"w00", nullptr, 0}, {"w10", "w01", 1}, {"w20", "w11", 2},
                 {"w30", "w03", 3}};
    for (const auto& k : kKeys) {
        TimePoly pa, pb;
        bool any = false;
        if (d.contains(k.a)) {
            pa = TimePoly(need_vec(d, k.a));
            any = true;
        }
        if (k.b && d.contains(k.b)) {
            pb = TimePoly(need_vec(d, k.b));
            any = true;
        }
        if (any) drift.set(k.degree, pa, pb);
    }
    for (const auto& [key, value] : d.items()) {
        (void)value;
        if (key != "w00" && key != "w10" && key != "w01" && key != "w20" &&
            key != "w11" && key != "w30" && key != "w03")
            bad("unknown drift key '" + key + "'");
    }
    return drift;
}

struct Emitter {
    fs::path dir;
    std::vector<std::string> artifacts;

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir);
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw Error("cannot open output file " + (dir / name).string());
        artifacts.push_back(name);
        return f;
    }
};

// ---------------------------------------------------------------- chain1d
void run_chain_mode(const json& j, Emitter& out) {
    const auto& init = j.contains("initial") ? j["initial"] : json::object();
    ChainState1D s0;
    if (init.contains("eta")) {
        // exact-family initial data at t0
        s0 = exact_chain_state(need_num(init, "eta"), need_num(j, "t0"),
                               static_cast<int>(opt_num(init, "order", 3)));
    } else {
        s0.phi = need_num(init, "phi");
        s0.a = need_vec(init, "a");
        if (s0.a.empty()) bad("chain1d: need at least a1");
    }
    const double t0 = need_num(j, "t0"), t1 = need_num(j, "t1"), dt = need_num(j, "dt");
    const size_t every = static_cast<size_t>(opt_num(j, "output_every", 1));

    ChainRun run = run_chain(s0, t0, t1, dt);
    ChainRun thinned;
    thinned.a1_sign_change_time = run.a1_sign_change_time;
    for (size_t i = 0; i < run.samples.size(); i += every)
        thinned.samples.push_back(run.samples[i]);
    if (thinned.samples.back().t != run.samples.back().t)
        thinned.samples.push_back(run.samples.back());

    auto csv = out.open("chain.csv");
    write_chain_csv(csv, thinned);

    SvgSeries front;
    front.label = "phi(t)";
    for (const auto& s : thinned.samples) front.points.emplace_back(s.t, s.state.phi);
    auto svg = out.open("chain.svg");
    write_svg_plot(svg, {front}, {"t", "phi", "front position"});
}

// ---------------------------------------------------------------- vortex
json vortex_state_json(const json& init, double mu, VortexState& s) {
    const auto a = need_vec(init, "a");
    if (a.size() != 2) bad("vortex initial 'a' must have 2 entries");
    s.a = {a[0], a[1]};
    s.phi = need_num(init, "phi");
    s.c1_0 = need_num(init, "c1_0");
    if (s.c1_0 == 0.0) bad("vortex: c1_0 must be nonzero");
    s.sigma = opt_num(init, "sigma", 0.0);
    s.c0_02 = opt_num(init, "c0_02", 0.0);
    if (init.contains("grad_p1_1")) {
        const auto g = need_vec(init, "grad_p1_1");
        if (g.size() != 2) bad("grad_p1_1 must have 2 entries");
        s.grad_p1_1 = {g[0], g[1]};
    }
    if (init.contains("z")) {
        const auto z = need_vec(init, "z");
        if (z.size() != 7) bad("vortex tail 'z' must have 7 entries");
        std::copy(z.begin(), z.end(), s.z.begin());
    }
    s.mu = mu;
    return init;
}

void run_vortex_mode(const json& j, Emitter& out) {
    const double mu = resolve_mu(j);
    const DriftField drift = parse_drift(j);
    const double t0 = need_num(j, "t0"), t1 = need_num(j, "t1"), dt = need_num(j, "dt");
    const size_t every = static_cast<size_t>(opt_num(j, "output_every", 1));

    std::vector<VortexState> states;
    if (j.contains("sweep")) {
        if (!j["sweep"].is_array() || j["sweep"].empty()) bad("'sweep' must be a list");
        for (const auto& e : j["sweep"]) {
            VortexState s;
            vortex_state_json(e, mu, s);
            states.push_back(s);
        }
    } else {
        if (!j.contains("initial")) bad("vortex: need 'initial' or 'sweep'");
        VortexState s;
        vortex_state_json(j["initial"], mu, s);
        states.push_back(s);
    }

    // independent entries run concurrently; artifacts are written sequentially
    std::vector<std::future<VortexTrajectory>> futures;
    futures.reserve(states.size());
    for (const auto& s : states)
        futures.push_back(std::async(std::launch::async, [&, s]() {
            return run_vortex(s, drift, t0, t1, dt);
        }));

    std::vector<SvgSeries> series;
    for (size_t k = 0; k < futures.size(); ++k) {
        VortexTrajectory traj = futures[k].get();
        VortexTrajectory thinned;
        thinned.dt = traj.dt * static_cast<double>(every);
        for (size_t i = 0; i < traj.samples.size(); i += every)
            thinned.samples.push_back(traj.samples[i]);

        const std::string name =
            states.size() == 1 ? "vortex.csv"
                               : "vortex_" + std::to_string(k) + ".csv";
        auto csv = out.open(name);
        write_vortex_csv(csv, thinned, drift);

        SvgSeries sr;
        sr.label = "run " + std::to_string(k);
        for (const auto& smp : thinned.samples)
            sr.points.emplace_back(-smp.state.a.x1, -smp.state.a.x2);
        series.push_back(std::move(sr));
    }
    auto svg = out.open("trajectory.svg");
    write_svg_plot(svg, series, {"x1", "x2", "singularity path"});
}

// ---------------------------------------------------------------- refsolver
void run_refsolver_mode(const json& j, Emitter& out) {
    const std::string eq = j.value("equation", "");
    const double t1 = need_num(j, "t1");
    const auto& init = j.contains("initial") ? j["initial"] : json::object();
    const long snapshots = j.contains("snapshots") ? need_int(j, "snapshots") : 3;

    RefOptions opt;
    opt.front_record_dt = opt_num(j, "front_record_dt", 0.0);

    FieldGrid g0;
    double tstart = 0.0;
    RefTrajectory traj;
    if (eq == "model1d") {
        const std::string kind = init.value("kind", "");
        if (kind == "exact_wave") {
            const auto dom = need_vec(init, "domain");
            if (dom.size() != 2) bad("initial 'domain' must be [x0, x1]");
            g0 = sample_exact_wave(need_num(init, "eta"), need_num(init, "t"), dom[0],
                                   dom[1], static_cast<size_t>(need_int(init, "nodes")));
            tstart = g0.time;
        } else {
            bad("model1d initial kind must be 'exact_wave'");
        }
        for (long i = 1; i <= snapshots; ++i)
            opt.snapshot_times.push_back(tstart + (t1 - tstart) * i / snapshots);
        traj = solve_model_1d(g0, t1, opt);
    } else if (eq == "reduced_radial") {
        const double mu = resolve_mu(j);
        if (init.value("kind", "") != "cap") bad("reduced_radial initial kind must be 'cap'");
        g0 = radial_cap(mu, need_num(init, "depth"), need_num(init, "radius"),
                        need_num(init, "rmax"), static_cast<size_t>(need_int(init, "nodes")));
        for (long i = 1; i <= snapshots; ++i)
            opt.snapshot_times.push_back(t1 * i / snapshots);
        traj = solve_reduced_2d_radial(g0, mu, t1, opt);
    } else {
        bad("refsolver 'equation' must be 'model1d' or 'reduced_radial'");
    }

    {
        auto csv = out.open("snapshots.csv");
        CsvWriter w(csv, {"t", "x", "value"});
        for (const auto& g : traj.snapshots)
            for (size_t i = 0; i < g.size(); ++i)
                w.row(std::vector<double>{g.time, g.coord(i), g.values[i]});
    }
    if (!traj.front.empty()) {
        auto csv = out.open("front.csv");
        CsvWriter w(csv, {"t", "front"});
        for (const auto& [t, x] : traj.front) w.row(std::vector<double>{t, x});
    }
    {
        std::vector<SvgSeries> series;
        for (const auto& g : traj.snapshots) {
            SvgSeries sr;
            char label[48];
            std::snprintf(label, sizeof(label), "t=%.6g", g.time);
            sr.label = label;
            for (size_t i = 0; i < g.size(); ++i)
                sr.points.emplace_back(g.coord(i), g.values[i]);
            series.push_back(std::move(sr));
        }
        auto svg = out.open("field.svg");
        write_svg_plot(svg, series, {"x", "value", "field snapshots"});
    }
}

// ---------------------------------------------------------------- heatwave2d
std::vector<double> node_profile(const json& spec, const FrontGraph& g) {
    std::vector<double> v(g.size());
    const std::string kind = spec.value("kind", "");
    if (kind == "constant") {
        std::fill(v.begin(), v.end(), need_num(spec, "value"));
    } else if (kind == "tilt") {
        const double base = need_num(spec, "value"), slope = need_num(spec, "slope");
        for (size_t i = 0; i < v.size(); ++i) v[i] = base + slope * g.x2(i);
    } else if (kind == "cosine") {
        const double mean = need_num(spec, "mean"), amp = need_num(spec, "amp");
        const double waves = opt_num(spec, "waves", 1.0);
        const double span = g.dx2 * static_cast<double>(g.size());
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = mean + amp * std::cos(2.0 * M_PI * waves * (g.x2(i) - g.x2_0) / span);
    } else {
        bad("profile kind must be constant|tilt|cosine");
    }
    return v;
}

void run_heatwave_mode(const json& j, Emitter& out) {
    const double mu = resolve_mu(j);
    const DriftField drift = parse_drift(j);
    if (!j.contains("grid")) bad("heatwave2d: missing 'grid'");
    const auto& gj = j["grid"];

    FrontGraph f;
    f.mu = mu;
    f.periodic = gj.value("periodic", true);
    const double x2min = need_num(gj, "x2_min"), x2max = need_num(gj, "x2_max");
    const size_t nodes = static_cast<size_t>(need_int(gj, "nodes"));
    if (nodes < 4 || !(x2max > x2min)) bad("heatwave2d: bad grid");
    f.x2_0 = x2min;
    f.dx2 = (x2max - x2min) / static_cast<double>(f.periodic ? nodes : nodes - 1);
    f.phi.resize(nodes);
    f.a1.resize(nodes);
    f.a2.resize(nodes);
    if (!j.contains("initial")) bad("heatwave2d: missing 'initial'");
    f.phi = node_profile(j["initial"].at("phi"), f);
    f.a1 = node_profile(j["initial"].at("a1"), f);
    f.a2 = j["initial"].contains("a2") ? node_profile(j["initial"]["a2"], f)
                                       : std::vector<double>(nodes, 0.0);

    FrontRunOptions opt;
    opt.record_every = static_cast<size_t>(opt_num(j, "output_every", 1));
    const auto samples = run_front_graph(f, drift, need_num(j, "t0"), need_num(j, "t1"),
                                         need_num(j, "dt"), opt);
    auto csv = out.open("front.csv");
    write_front_csv(csv, samples);
    auto svg = out.open("front.svg");
    write_front_svg(svg, samples);
}

// ---------------------------------------------------------------- compare
void run_compare_mode(const json& j, Emitter& out) {
    const double eta = need_num(j, "eta");
    const double t0 = need_num(j, "t0"), t1 = need_num(j, "t1");
    const auto dom = need_vec(j, "domain");
    if (dom.size() != 2) bad("compare: 'domain' must be [x0, x1]");
    const size_t nodes = static_cast<size_t>(need_int(j, "nodes"));
    const int order = static_cast<int>(opt_num(j, "chain_order", 3));
    const double chain_dt = opt_num(j, "chain_dt", 1e-3);
    const long report_times = j.contains("report_times") ? need_int(j, "report_times") : 11;

    const ChainRun chain = run_chain(exact_chain_state(eta, t0, order), t0, t1, chain_dt);

    FieldGrid g0 = sample_exact_wave(eta, t0, dom[0], dom[1], nodes);
    RefOptions opt;
    for (long i = 0; i < report_times; ++i)
        opt.snapshot_times.push_back(t0 + (t1 - t0) * (i + 1) / report_times);
    const RefTrajectory fd = solve_model_1d(g0, t1, opt);

    const auto chain_phi_at = [&](double t) {
        // trajectory is uniform in t; linear interpolation is ample here
        const auto& smp = chain.samples;
        if (t <= smp.front().t) return smp.front().state.phi;
        if (t >= smp.back().t) return smp.back().state.phi;
        const double u = (t - smp.front().t) / (smp.back().t - smp.front().t);
        const size_t i = std::min(smp.size() - 2, static_cast<size_t>(u * (smp.size() - 1)));
        const double w = (t - smp[i].t) / (smp[i + 1].t - smp[i].t);
        return smp[i].state.phi * (1.0 - w) + smp[i + 1].state.phi * w;
    };

    auto csv = out.open("report.csv");
    CsvWriter w(csv, {"t", "front_chain", "front_fd", "difference", "cells"});
    for (const auto& g : fd.snapshots) {
        const double fd_front = front_position(g, FrontSide::Left, 1e-6 * field_amplitude(g));
        const double ch = chain_phi_at(g.time);
        w.row(std::vector<double>{g.time, ch, fd_front, ch - fd_front,
                                  std::abs(ch - fd_front) / g.dx});
    }
}

}  // namespace

ScenarioResult run_scenario(const std::string& config_path, const std::string& out_dir) {
    ScenarioResult result;
    json j;
    try {
        std::ifstream f(config_path);
        if (!f) throw ConfigError("cannot open config file: " + config_path);
        try {
            j = json::parse(f);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        if (j.value("schema", "") != "singdyn/1")
            throw ConfigError("config: expected \"schema\": \"singdyn/1\"");
        if (!j.contains("mode") || !j["mode"].is_string())
            throw ConfigError("config: missing 'mode'");
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.error = e.what();
        return result;
    }

    Emitter out;
    out.dir = out_dir;
    const std::string mode = j["mode"].get<std::string>();
    try {
        if (mode == "chain1d")
            run_chain_mode(j, out);
        else if (mode == "vortex")
            run_vortex_mode(j, out);
        else if (mode == "refsolver")
            run_refsolver_mode(j, out);
        else if (mode == "heatwave2d")
            run_heatwave_mode(j, out);
        else if (mode == "compare")
            run_compare_mode(j, out);
        else
            throw ConfigError("config: unknown mode '" + mode + "'");
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.error = e.what();
        // config errors must not leave partial artifacts behind
        for (const auto& name : out.artifacts) {
            std::error_code ec;
            fs::remove(fs::path(out_dir) / name, ec);
        }
        return result;
    } catch (const std::exception& e) {
        result.exit_code = 3;
        result.error = e.what();
    }

    result.artifacts = out.artifacts;
    json report;
    report["status"] = result.exit_code == 0 ? "ok" : "error";
    report["mode"] = mode;
    report["artifacts"] = result.artifacts;
    if (!result.error.empty()) report["error"] = result.error;
    if (j.contains("physical")) {
        const auto& p = j["physical"];
        const ReducedParams rp =
            physical_to_reduced(p["D"].get<double>(), p["kappa"].get<double>(),
                                p["beta"].get<double>(), p["omega"].get<double>());
        report["reduced"] = {{"mu", rp.mu},
                             {"time_scale", rp.time_scale},
                             {"drift_scale", rp.drift_scale}};
    }
    fs::create_directories(out_dir);
    std::ofstream rf(fs::path(out_dir) / "report.json", std::ios::binary);
    rf << report.dump(2) << '\n';
    result.artifacts.push_back("report.json");
    return result;
}

void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path,
                     const std::string& x_col, const std::string& y_col) {
    const CsvTable table = read_csv_file(csv_path);
    int xi = x_col.empty() ? 0 : table.column(x_col);
    if (xi < 0) throw ConfigError("plot: no column '" + x_col + "'");

    std::vector<int> ys;
    if (!y_col.empty()) {
        const int yi = table.column(y_col);
        if (yi < 0) throw ConfigError("plot: no column '" + y_col + "'");
        ys.push_back(yi);
    } else {
        for (size_t i = 0; i < table.header.size(); ++i)
            if (static_cast<int>(i) != xi) ys.push_back(static_cast<int>(i));
    }
    if (ys.empty()) throw ConfigError("plot: nothing to plot");

    std::vector<SvgSeries> series;
    for (int yi : ys) {
        SvgSeries sr;
        sr.label = table.header[yi];
        for (const auto& row : table.rows) sr.points.emplace_back(row[xi], row[yi]);
        series.push_back(std::move(sr));
    }
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + svg_path);
    write_svg_plot(f, series, {table.header[xi], ys.size() == 1 ? table.header[ys[0]] : "value",
                               ""});
}

}  // namespace singdyn
