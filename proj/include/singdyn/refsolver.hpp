#pragma once

#include <vector>

#include "singdyn/errors.hpp"

namespace singdyn {

enum class GridGeometry { Line1D, Radial2D };

/// Uniform grid holding the discrete solution field of the reference solver.
/// `level` is the degeneration value the front lives on (0 for the 1D model
/// equation, 1/(2 mu) for the reduced equation).
struct FieldGrid {
    GridGeometry geometry = GridGeometry::Line1D;
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> values;
    double time = 0.0;
    double level = 0.0;

    size_t size() const { return values.size(); }
    double coord(size_t i) const { return x0 + static_cast<double>(i) * dx; }
};

FieldGrid make_grid_1d(double x0, double x1, size_t nodes, double level = 0.0);
FieldGrid make_grid_radial(double rmax, size_t nodes, double level);

/// Sample the exact heat-wave family onto a 1D grid at time t.
FieldGrid sample_exact_wave(double eta, double t, double x0, double x1, size_t nodes);

/// Radially symmetric expanding cap for the reduced equation: the field sits
/// at the degeneration level outside `radius` and dips below it inside,
/// c(r) = level - depth (1 - (r/radius)^2)^2.
FieldGrid radial_cap(double mu, double depth, double radius, double rmax, size_t nodes);

struct RefOptions {
    double cfl_fraction = 0.2;            // of the explicit stability bound
    std::vector<double> snapshot_times;   // extra recorded states (final always kept)
    double front_record_dt = 0.0;         // 0: record fronts only at snapshots
    double boundary_tolerance = 1e-12;    // support contact threshold
    /// Recorded fronts are extracted at this fraction of the field amplitude
    /// off the level: the explicit scheme leaks a tail of denormal-size values
    /// past the true front, and a tiny cutoff recovers cell accuracy.
    double front_threshold_rel = 1e-6;
};

struct RefTrajectory {
    std::vector<FieldGrid> snapshots;                // requested times + final state
    std::vector<std::pair<double, double>> front;    // (t, front position)
    double last_dt = 0.0;
    long long steps = 0;
};

/// Explicit conservative solve of u_t = 1/2 (u^2)_xx (diffusivity u,
/// arithmetic-mean interface values). Requires u >= 0 with compact support
/// away from the grid ends; mass sum(u) dx is conserved to rounding while the
/// support stays interior. Throws BoundaryContactError / Error on CFL issues.
RefTrajectory solve_model_1d(const FieldGrid& initial, double t1,
                             const RefOptions& options = {});

/// Explicit solve of the radially symmetric reduced equation
/// c_t = (1/r) (r (1 - 2 mu c) c_r)_r with a symmetry stencil at r = 0.
/// Requires c <= 1/(2 mu) (the equation is backward-parabolic above the
/// degeneration level).
RefTrajectory solve_reduced_2d_radial(const FieldGrid& initial, double mu, double t1,
                                      const RefOptions& options = {});

/// Linear-interpolated crossings of the degeneration level, in coordinate
/// order. A nonzero eps moves the extraction level by eps toward the
/// interior deviation (numerical-front cutoff). Throws NoCrossingError when
/// the field never meets the level.
std::vector<double> extract_front(const FieldGrid& g, double eps = 0.0);

enum class FrontSide { Left, Right };

/// Convenience: the left-most or right-most level crossing.
double front_position(const FieldGrid& g, FrontSide side, double eps = 0.0);

/// Max deviation of the field from its degeneration level.
double field_amplitude(const FieldGrid& g);

}  // namespace singdyn
