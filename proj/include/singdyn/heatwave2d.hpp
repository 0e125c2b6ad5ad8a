#pragma once

#include <ostream>
#include <vector>

#include "singdyn/harmonic.hpp"
#include "singdyn/hpoly.hpp"

namespace singdyn {

/// Heat-wave front in a graph chart: x1 = phi(x2, t) on a uniform x2 grid,
/// with the first two normal expansion coefficients carried per node.
/// a1 < 0 is required at every node. Periodic grids identify node n with
/// node 0 (period n * dx2); otherwise one-sided second-order differences are
/// used at the ends.
struct FrontGraph {
    double x2_0 = 0.0;
    double dx2 = 0.0;
    std::vector<double> phi, a1, a2;
    double mu = 1.0;
    bool periodic = true;

    size_t size() const { return phi.size(); }
    double x2(size_t i) const { return x2_0 + static_cast<double>(i) * dx2; }
};

struct FrontDeriv {
    std::vector<double> phi_dot, a1_dot, a2_dot;
};

/// Per-node time derivatives of the truncated front chain (a3 = 0):
///   phi_t = 2 mu (1 + phi_x2^2) a1 + w_x1 - w_x2 phi_x2
///   a1_t  = -w_x2 a1_x2 - a1 <V1, grad S>
///           - 2 mu ( -a1^2 phi_x2x2 - 2 (a1^2)_x2 phi_x2 + 4 (1+phi_x2^2) a1 a2 )
///   a2_t  = -w_x2 a2_x2 - a1_x2 V1_2 - a1 <V2, grad S> - 2 a2 <V1, grad S>
///           - mu ( (a1^2)_x2x2 - 12 (a1 a2)_x2 phi_x2 - 6 a1 a2 phi_x2x2
///                  + 12 a2^2 (1+phi_x2^2) )
/// with grad S = (1, -phi_x2) and V_k the k-th x1-Taylor coefficient of
/// grad w at (phi, x2). Spatial derivatives are central differences. The
/// evaluation is pure and node-local given the neighbor stencil, so callers
/// may parallelize over nodes.
/// Throws DegenerateExpansionError when a1 >= 0 at any node.
FrontDeriv front_rhs_graph(const FrontGraph& f, const DriftField& drift, double t);

struct FrontRunOptions {
    double graph_slope_limit = 10.0;  // |phi_x2| beyond this aborts: re-chart
    size_t record_every = 1;
};

struct FrontSample {
    double t;
    FrontGraph state;
};

/// RK4 time stepping of the graph chain. Throws GraphLossError when the
/// front stops being a graph over x2, NonFiniteError on blow-up.
std::vector<FrontSample> run_front_graph(const FrontGraph& f0, const DriftField& drift,
                                         double t0, double t1, double dt,
                                         const FrontRunOptions& options = {});

/// Time-of-arrival data at one sample point, S = t - Phi(x).
struct EikonalSample {
    Vec2 x{};
    double Phi = 0.0;
    Vec2 grad_Phi{};
    double lap_Phi = 0.0;
    double a1 = 0.0;
    Vec2 grad_a1{};
    double a2 = 0.0;
};

struct EikonalResidual {
    double first;   // 1 - <grad Phi, grad w> + 2 mu a1 |grad Phi|^2
    double second;  // the a1-chain condition in arrival form
};

/// Left-hand sides of the two arrival-form chain conditions; both vanish on
/// exact heat waves. Throws on vanishing grad Phi.
EikonalResidual eikonal_residual(const EikonalSample& s, const DriftField& drift,
                                 double mu);

/// First chain condition as a velocity law: v = 2 mu dc_dnu - dw_dnu.
/// Orientation of both derivatives is the caller's explicit choice.
double normal_velocity(double dc_dnu, double dw_dnu, double mu);

/// Front speed for diffusivity k(c) ~ k0 c^gamma: the drift part plus
/// (k0/gamma) |grad S| a1^gamma. For gamma = 1, k0 = 2 mu this reduces to
/// normal_velocity on matching data. Requires k0, gamma > 0 and a1 >= 0.
double gamma_front_speed(double V_nu, double a1, double grad_S_norm, double k0,
                         double gamma);

/// CSV columns: t, x2, phi, a1, a2 (one row per node per sample).
void write_front_csv(std::ostream& os, const std::vector<FrontSample>& samples);

/// SVG with one front polyline (phi, x2) per recorded sample.
void write_front_svg(std::ostream& os, const std::vector<FrontSample>& samples);

}  // namespace singdyn
