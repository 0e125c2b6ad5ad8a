#include "singdyn/heatwave2d.hpp"

#include <cmath>

#include "singdyn/csv.hpp"
#include "singdyn/integrate.hpp"
#include "singdyn/svg.hpp"

namespace singdyn {

namespace {

// first/second derivative along the grid; central inside, one-sided
// second-order at non-periodic ends
class GridDiff {
public:
    GridDiff(const std::vector<double>& f, double h, bool periodic)
        : f_(f), h_(h), periodic_(periodic), n_(f.size()) {
        if (n_ < 4) throw Error("front grid needs at least 4 nodes");
    }

    double d1(size_t i) const {
        if (periodic_) return (at(i + 1) - at(i + n_ - 1)) / (2.0 * h_);
        if (i == 0) return (-3.0 * f_[0] + 4.0 * f_[1] - f_[2]) / (2.0 * h_);
        if (i == n_ - 1)
            return (3.0 * f_[n_ - 1] - 4.0 * f_[n_ - 2] + f_[n_ - 3]) / (2.0 * h_);
        return (f_[i + 1] - f_[i - 1]) / (2.0 * h_);
    }

    double d2(size_t i) const {
        const double h2 = h_ * h_;
        if (periodic_) return (at(i + 1) - 2.0 * f_[i] + at(i + n_ - 1)) / h2;
        if (i == 0) return (2.0 * f_[0] - 5.0 * f_[1] + 4.0 * f_[2] - f_[3]) / h2;
        if (i == n_ - 1)
            return (2.0 * f_[n_ - 1] - 5.0 * f_[n_ - 2] + 4.0 * f_[n_ - 3] -
                    f_[n_ - 4]) /
                   h2;
        return (f_[i + 1] - 2.0 * f_[i] + f_[i - 1]) / h2;
    }

private:
    double at(size_t i) const { return f_[i % n_]; }
    const std::vector<double>& f_;
    double h_;
    bool periodic_;
    size_t n_;
};

}  // namespace

FrontDeriv front_rhs_graph(const FrontGraph& f, const DriftField& drift, double t) {
    const size_t n = f.size();
    if (f.a1.size() != n || f.a2.size() != n || n < 4)
        throw Error("front_rhs_graph: inconsistent grid");
    if (!(f.mu > 0.0)) throw Error("front_rhs_graph: mu > 0 required");
    if (!(f.dx2 > 0.0)) throw Error("front_rhs_graph: grid spacing must be positive");
    for (double v : f.a1)
        if (!(v < 0.0))
            throw DegenerateExpansionError("front_rhs_graph: a1 must stay negative");

    std::vector<double> a1sq(n), a1a2(n);
    for (size_t i = 0; i < n; ++i) {
        a1sq[i] = f.a1[i] * f.a1[i];
        a1a2[i] = f.a1[i] * f.a2[i];
    }
    const GridDiff Dphi(f.phi, f.dx2, f.periodic);
    const GridDiff Da1(f.a1, f.dx2, f.periodic);
    const GridDiff Da2(f.a2, f.dx2, f.periodic);
    const GridDiff Da1sq(a1sq, f.dx2, f.periodic);
    const GridDiff Da1a2(a1a2, f.dx2, f.periodic);

    const double mu = f.mu;
    FrontDeriv d;
    d.phi_dot.resize(n);
    d.a1_dot.resize(n);
    d.a2_dot.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2 p{f.phi[i], f.x2(i)};
        const double a1 = f.a1[i], a2 = f.a2[i];
        const double p2 = Dphi.d1(i), p22 = Dphi.d2(i);
        const double gs2 = 1.0 + p2 * p2;  // |grad S|^2, grad S = (1, -phi_x2)
        const Vec2 gradS{1.0, -p2};

        const Vec2 gw = drift.grad_at(t, p);
        const auto hess = drift.hessian_at(t, p);
        const Vec2 V1{hess[0], hess[1]};          // d/dx1 of grad w
        const Vec2 V2 = drift.dkx1_grad_at(t, p, 2);

        d.phi_dot[i] = 2.0 * mu * gs2 * a1 + gw.x1 - gw.x2 * p2;

        d.a1_dot[i] = -gw.x2 * Da1.d1(i) - a1 * dot(V1, gradS) -
                      2.0 * mu * (-a1sq[i] * p22 - 2.0 * Da1sq.d1(i) * p2 +
                                  4.0 * gs2 * a1 * a2);

        d.a2_dot[i] = -gw.x2 * Da2.d1(i) - Da1.d1(i) * V1.x2 - a1 * dot(V2, gradS) -
                      2.0 * a2 * dot(V1, gradS) -
                      mu * (Da1sq.d2(i) - 12.0 * Da1a2.d1(i) * p2 -
                            6.0 * a1a2[i] * p22 + 12.0 * a2 * a2 * gs2);
    }
    return d;
}

std::vector<FrontSample> run_front_graph(const FrontGraph& f0, const DriftField& drift,
                                         double t0, double t1, double dt,
                                         const FrontRunOptions& options) {
    const size_t n = f0.size();
    FrontGraph work = f0;
    std::vector<double> y(3 * n);
    const auto pack = [&](const FrontGraph& g, std::vector<double>& yy) {
        std::copy(g.phi.begin(), g.phi.end(), yy.begin());
        std::copy(g.a1.begin(), g.a1.end(), yy.begin() + n);
        std::copy(g.a2.begin(), g.a2.end(), yy.begin() + 2 * n);
    };
    const auto unpack = [&](const std::vector<double>& yy, FrontGraph& g) {
        std::copy(yy.begin(), yy.begin() + n, g.phi.begin());
        std::copy(yy.begin() + n, yy.begin() + 2 * n, g.a1.begin());
        std::copy(yy.begin() + 2 * n, yy.end(), g.a2.begin());
    };
    pack(f0, y);

    std::vector<FrontSample> samples;
    size_t counter = 0;
    const RhsFn rhs = [&](double t, const std::vector<double>& yy, std::vector<double>& dy) {
        unpack(yy, work);
        const GridDiff Dphi(work.phi, work.dx2, work.periodic);
        for (size_t i = 0; i < n; ++i)
            if (std::abs(Dphi.d1(i)) > options.graph_slope_limit)
                throw GraphLossError(
                    "run_front_graph: |phi_x2| exceeded the graph threshold; "
                    "re-chart the front");
        const FrontDeriv d = front_rhs_graph(work, drift, t);
        std::copy(d.phi_dot.begin(), d.phi_dot.end(), dy.begin());
        std::copy(d.a1_dot.begin(), d.a1_dot.end(), dy.begin() + n);
        std::copy(d.a2_dot.begin(), d.a2_dot.end(), dy.begin() + 2 * n);
    };
    const ObserverFn obs = [&](double t, const std::vector<double>& yy) {
        if (counter++ % options.record_every) return;
        FrontSample smp{t, f0};
        unpack(yy, smp.state);
        samples.push_back(std::move(smp));
    };
    rk4_integrate(y, t0, t1, dt, rhs, obs);
    return samples;
}

EikonalResidual eikonal_residual(const EikonalSample& s, const DriftField& drift,
                                 double mu) {
    const double g2 = dot(s.grad_Phi, s.grad_Phi);
    if (!(g2 > 0.0)) throw Error("eikonal_residual: vanishing grad Phi");
    const Vec2 gw = drift.grad_at(s.Phi, s.x);
    const Vec2 V1 = drift.grad_dt_at(s.Phi, s.x);

    EikonalResidual r;
    r.first = 1.0 - dot(s.grad_Phi, gw) + 2.0 * mu * s.a1 * g2;
    r.second = -dot(s.grad_a1, gw) + s.a1 * dot(V1, s.grad_Phi) +
               2.0 * mu * s.a1 *
                   (4.0 * dot(s.grad_Phi, s.grad_a1) + s.a1 * s.lap_Phi -
                    4.0 * s.a2 * g2);
    return r;
}

double normal_velocity(double dc_dnu, double dw_dnu, double mu) {
    return 2.0 * mu * dc_dnu - dw_dnu;
}

double gamma_front_speed(double V_nu, double a1, double grad_S_norm, double k0,
                         double gamma) {
    if (!(k0 > 0.0)) throw Error("gamma_front_speed: k0 > 0 required");
    if (!(gamma > 0.0)) throw Error("gamma_front_speed: gamma > 0 required");
    if (a1 < 0.0) throw Error("gamma_front_speed: a1 >= 0 required");
    return V_nu + (k0 / gamma) * grad_S_norm * std::pow(a1, gamma);
}

void write_front_csv(std::ostream& os, const std::vector<FrontSample>& samples) {
    CsvWriter csv(os, {"t", "x2", "phi", "a1", "a2"});
    for (const auto& s : samples)
        for (size_t i = 0; i < s.state.size(); ++i)
            csv.row(std::vector<double>{s.t, s.state.x2(i), s.state.phi[i],
                                        s.state.a1[i], s.state.a2[i]});
}

void write_front_svg(std::ostream& os, const std::vector<FrontSample>& samples) {
    std::vector<SvgSeries> series;
    for (const auto& s : samples) {
        SvgSeries sr;
        char label[48];
        std::snprintf(label, sizeof(label), "t=%.6g", s.t);
        sr.label = label;
        for (size_t i = 0; i < s.state.size(); ++i)
            sr.points.emplace_back(s.state.phi[i], s.state.x2(i));
        series.push_back(std::move(sr));
    }
    write_svg_plot(os, series, {"x1", "x2", "front"});
}

}  // namespace singdyn
