#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "singdyn/errors.hpp"

namespace singdyn {

/// Front position and chain coefficients a_1..a_N of the one-dimensional
/// heat-wave expansion u = a_1 (x-phi)_+ + a_2 (x-phi)_+^2 + ...
/// Coefficients beyond N are treated as exactly zero (truncation closure).
struct ChainState1D {
    double phi = 0.0;
    std::vector<double> a;  // a[k-1] = a_k, N = a.size() >= 1
};

struct ChainDeriv {
    double phi_dot = 0.0;
    std::vector<double> a_dot;
};

/// Hugoniot chain right-hand side, truncated with a_{N+1} = 0:
///   phi'  = -a_1
///   a_k'  = -(k+1) a_{k+1} a_1 + (k+2)(k+1)/2 * sum_{i+j=k+2} a_i a_j
/// For k <= 2 this reproduces a_1' = 4 a_1 a_2, a_2' = 3 (2 a_2^2 + 3 a_1 a_3).
ChainDeriv chain_rhs(const ChainState1D& s);

struct ExactWaveParams {
    double eta = 1.0;  // > 0
    double t0 = 1.0;   // > 0
};

/// The exact one-parameter family u = (6t)^{-1} (x + eta t^{1/3})_+ (x - eta t^{1/3})_-,
/// i.e. (eta^2 t^{2/3} - x^2)/(6t) inside |x| < eta t^{1/3} and 0 outside.
double exact_wave(double eta, double x, double t);
double exact_wave(const ExactWaveParams& p, double x, double t);

/// Chain state of the exact family at time t (N >= 2):
/// phi = -eta t^{1/3}, a_1 = eta/(3 t^{2/3}), a_2 = -1/(6t), a_k = 0 for k >= 3.
ChainState1D exact_chain_state(double eta, double t, int order = 3);

struct ChainSample {
    double t;
    ChainState1D state;
};

struct ChainRun {
    std::vector<ChainSample> samples;
    /// First time a_1 changes sign (front stops degenerating); reported, not
    /// acted upon.
    std::optional<double> a1_sign_change_time;
};

/// Fixed-step RK4 trajectory, state recorded at every step.
/// Throws NonFiniteError on blow-up.
ChainRun run_chain(const ChainState1D& s0, double t0, double t1, double dt);

struct FreeBoundaryResidual {
    double valueeq;     // u at the front minus the degeneration value (0)
    double velocityeq;  // phi_dot minus du/dnu
};

/// Residuals of the free-boundary conditions: u vanishes at the front and the
/// front velocity equals the one-sided normal derivative of u.
FreeBoundaryResidual free_boundary_residual(double u_front_limit,
                                            double normal_derivative,
                                            double phi_dot);

/// CSV columns: t, phi, a1..aN.
void write_chain_csv(std::ostream& os, const ChainRun& run);

}  // namespace singdyn
