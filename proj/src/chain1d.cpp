#include "singdyn/chain1d.hpp"

#include <cmath>

#include "singdyn/csv.hpp"
#include "singdyn/integrate.hpp"

namespace singdyn {

ChainDeriv chain_rhs(const ChainState1D& s) {
    const int n = static_cast<int>(s.a.size());
    if (n < 1) throw Error("chain_rhs: need N >= 1");
    const auto ak = [&](int k) { return (k >= 1 && k <= n) ? s.a[k - 1] : 0.0; };

    ChainDeriv d;
    d.phi_dot = -ak(1);
    d.a_dot.resize(n);
    for (int k = 1; k <= n; ++k) {
        double conv = 0.0;  // sum over i+j = k+2, i,j >= 1
        for (int i = 1; i <= k + 1; ++i) conv += ak(i) * ak(k + 2 - i);
        d.a_dot[k - 1] =
            -(k + 1) * ak(k + 1) * ak(1) + 0.5 * (k + 2) * (k + 1) * conv;
    }
    return d;
}

double exact_wave(double eta, double x, double t) {
    if (!(t > 0.0)) throw Error("exact_wave: requires t > 0");
    if (!(eta > 0.0)) throw Error("exact_wave: requires eta > 0");
    const double front = eta * std::cbrt(t);
    if (x <= -front || x >= front) return 0.0;
    return (eta * eta * std::cbrt(t * t) - x * x) / (6.0 * t);
}

double exact_wave(const ExactWaveParams& p, double x, double t) {
    if (!(p.eta > 0.0) || !(p.t0 > 0.0))
        throw Error("exact_wave: requires eta > 0 and t0 > 0");
    return exact_wave(p.eta, x, t);
}

ChainState1D exact_chain_state(double eta, double t, int order) {
    if (!(t > 0.0) || !(eta > 0.0)) throw Error("exact_chain_state: eta, t > 0");
    if (order < 2) throw Error("exact_chain_state: order >= 2");
    ChainState1D s;
    s.phi = -eta * std::cbrt(t);
    s.a.assign(order, 0.0);
    s.a[0] = eta / (3.0 * std::cbrt(t * t));
    s.a[1] = -1.0 / (6.0 * t);
    return s;
}

ChainRun run_chain(const ChainState1D& s0, double t0, double t1, double dt) {
    const size_t n = s0.a.size();
    if (n < 1) throw Error("run_chain: need N >= 1");
    if (!(t0 > 0.0)) throw Error("run_chain: requires t1 > t0 > 0");
    std::vector<double> y(n + 1);
    y[0] = s0.phi;
    std::copy(s0.a.begin(), s0.a.end(), y.begin() + 1);

    ChainRun run;
    ChainState1D work;
    work.a.resize(n);
    const RhsFn f = [&](double, const std::vector<double>& yy, std::vector<double>& dy) {
        work.phi = yy[0];
        std::copy(yy.begin() + 1, yy.end(), work.a.begin());
        ChainDeriv d = chain_rhs(work);
        dy[0] = d.phi_dot;
        std::copy(d.a_dot.begin(), d.a_dot.end(), dy.begin() + 1);
    };
    const ObserverFn obs = [&](double t, const std::vector<double>& yy) {
        ChainSample smp;
        smp.t = t;
        smp.state.phi = yy[0];
        smp.state.a.assign(yy.begin() + 1, yy.end());
        if (!run.samples.empty() && !run.a1_sign_change_time) {
            const double prev = run.samples.back().state.a[0];
            const double cur = smp.state.a[0];
            if (prev != 0.0 && ((prev > 0.0) != (cur > 0.0)))
                run.a1_sign_change_time = t;
        }
        run.samples.push_back(std::move(smp));
    };
    rk4_integrate(y, t0, t1, dt, f, obs);
    return run;
}

FreeBoundaryResidual free_boundary_residual(double u_front_limit,
                                            double normal_derivative,
                                            double phi_dot) {
    return {u_front_limit - 0.0, phi_dot - normal_derivative};
}

void write_chain_csv(std::ostream& os, const ChainRun& run) {
    const size_t n = run.samples.empty() ? 0 : run.samples.front().state.a.size();
    std::vector<std::string> header{"t", "phi"};
    for (size_t k = 1; k <= n; ++k) header.push_back("a" + std::to_string(k));
    CsvWriter csv(os, header);
    for (const auto& s : run.samples) {
        std::vector<double> row{s.t, s.state.phi};
        row.insert(row.end(), s.state.a.begin(), s.state.a.end());
        csv.row(row);
    }
}

}  // namespace singdyn
