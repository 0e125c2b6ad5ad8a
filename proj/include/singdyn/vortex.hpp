#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "singdyn/harmonic.hpp"
#include "singdyn/hpoly.hpp"

namespace singdyn {

/// State of a vortex-type singularity. The singular support is the single
/// point x = -a(t). The leading structure is pinned by the representation:
/// c0_0 = 1/(2 mu), the quadratic part of S is x^2, and the linear Taylor
/// coefficients of the smooth part are (c1_0 sin(phi), c1_0 cos(phi)), which
/// makes |grad p0_1|^2 = c1_0^2 exact.
struct VortexState {
    Vec2 a{0.0, 0.0};
    double phi = 0.0;
    double c1_0 = 1.0;  // must stay away from 0
    double sigma = 0.0;
    double c0_02 = 0.0;
    Vec2 grad_p1_1{0.0, 0.0};
    /// Truncation tail: cubic coefficients of the smooth part (4) and
    /// quadratic coefficients of the singular amplitude (3); zero in the
    /// default truncation and constant in time otherwise.
    std::array<double, 7> z{};
    double mu = 1.0;
};

/// All derived Taylor data reconstructed algebraically from a VortexState:
/// the quadratic smooth coefficients, the S-corrections Q1/Q2, the nonlinear
/// flux slices, and the vectors steering the sigma / c0_02 / grad_p1_1
/// equations.
struct CascadeBundle {
    HPoly p0_1, p0_2, p0_3;  // degrees 1..3
    HPoly p1_1, p1_2;        // degrees 1..2
    HPoly Q1, Q2;            // S = x^2 (1 + Q1 + Q2 + ...)
    double q_02 = 0.0;       // trailing coefficient of Q2
    HPoly G1_2, G1_3, G0_4;  // flux slices (G0_4 includes the q_02 part)
    double theta0 = 0.0;
    HPoly R3, L1;  // degree-3 / degree-1 assemblies behind F and calF
    HPoly M;       // degree-2, the q_02-independent part of the p0_2 equation
    Vec2 Fvec{}, calF{}, calF1{};
    Vec2 psi0{};
    double d = 0.0;       // 5 c1_0^2 + 2 c0_10^2 = det(B1)/6
    double dprime = 0.0;  // cos(2 phi) - 6
    double c1_0_dot = 0.0;
};

/// Deterministic algebraic reconstruction of the cascade from the state.
/// Throws DegenerateVortexError when |c1_0| <= c10_floor.
CascadeBundle build_cascade(const VortexState& s, const DriftField& drift, double t,
                            double c10_floor = 0.0);

struct VortexDeriv {
    Vec2 a_dot{};
    double phi_dot = 0.0;
    double c1_0_dot = 0.0;
    double sigma_dot = 0.0;
    double c0_02_dot = 0.0;
    Vec2 grad_p1_1_dot{};
};

VortexDeriv vortex_rhs(const VortexState& s, const DriftField& drift, double t,
                       double c10_floor = 0.0);

/// The c1_0 equation in closed form (the final-ODE-system route), written in
/// (phi, sigma, c0_02, omega_20). Must agree with CascadeBundle::c1_0_dot,
/// which goes through the quadratic-coefficient algebra.
double c1_0_dot_closed_form(const VortexState& s, const DriftField& drift, double t);

/// Residual of the linear identity that ties sigma_dot and q_02 to calF1;
/// zero up to rounding by construction.
Vec2 closure_identity_residual(const VortexState& s, const CascadeBundle& b,
                               double sigma_dot);

struct VortexSample {
    double t;
    VortexState state;
};

struct VortexTrajectory {
    std::vector<VortexSample> samples;
    double dt = 0.0;
};

struct VortexRunOptions {
    double c10_rel_floor = 1e-8;  // DegenerateVortex threshold vs initial |c1_0|
};

/// Fixed-step RK4 trajectory of (a, phi, c1_0, sigma, c0_02, grad_p1_1);
/// the tail z is constant. Throws NonFiniteError / DegenerateVortexError.
VortexTrajectory run_vortex(const VortexState& s0, const DriftField& drift,
                            double t0, double t1, double dt,
                            const VortexRunOptions& options = {});

/// Defining-equation oracle: along a stored trajectory, assemble the smooth
/// and singular residual polynomials of the expansion directly from Taylor
/// slices, with every time derivative replaced by a centered difference of
/// the stored coefficient series. Reports max-abs residual per Taylor order
/// at each interior sample. For a correct closure the entries decay as
/// O(dt^2); the order-2 singular entry is structurally zero.
struct ConsistencyReport {
    std::vector<double> t;                        // interior sample times
    std::vector<std::array<double, 3>> smooth;    // orders 0..2
    std::vector<std::array<double, 4>> singular;  // orders 2..5
    std::vector<double> closure_identity;         // |closure residual| per sample

    double max_smooth(int order) const;
    double max_singular(int order) const;  // order in 2..5
};

ConsistencyReport consistency_residuals(const VortexTrajectory& traj,
                                        const DriftField& drift);

/// Taylor slices (orders 2..5) of the singular defining polynomial for given
/// time derivatives of the state. With the derivatives produced by vortex_rhs
/// every slice vanishes identically (to rounding); this is the algebraic
/// closure property behind the trajectory oracle.
std::array<HPoly, 4> singular_defect_slices(const VortexState& s,
                                            const DriftField& drift, double t,
                                            const VortexDeriv& deriv);

/// Rotate a vortex state by angle theta (counterclockwise, about the moving
/// origin): all Taylor tensors rotate, phi shifts, scalars are invariant.
/// With zero drift the dynamics commutes with this map.
VortexState rotate_state(const VortexState& s, double theta);

/// Rotate a homogeneous polynomial field by theta: returns p' with
/// p'(x) = p(R(-theta) x).
HPoly rotate_field(const HPoly& p, double theta);

/// CSV columns: t, a1, a2, phi, c1_0, sigma, c0_02, closure_res1, closure_res2.
void write_vortex_csv(std::ostream& os, const VortexTrajectory& traj,
                      const DriftField& drift);

}  // namespace singdyn
