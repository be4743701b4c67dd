#pragma once

// Reference computations used to cross-check the library. Each one takes a
// different route from the production code (brute force, long double,
// finite differences, direct integration) so that agreement is meaningful.

#include <vector>

#include "eady/spectral.hpp"

namespace eady::verify {

/// Root of x·tanh x = 1 by Newton's method in long double.
long double neutral_x_oracle();

/// Brute-force minimum of f over an nx × nz grid on one X-period and 0..B,
/// polished by local parabolic fits. Returns (X, z, f).
struct GridMinimum {
    double X = 0.0;
    double z = 0.0;
    double f = 0.0;
};
GridMinimum brute_min_f(const WaveMode& mode, double t, int nx = 400, int nz = 200);

/// Same restricted to a single level.
GridMinimum brute_min_f_level(const WaveMode& mode, double z, double t, int nx = 4000);

/// Tangency points of the lower convex hull of {(X, S′(X, z, t))} sampled
/// densely over one period (monotone chain). The hull is taken over the
/// period centred on the concave region so the bridging segment is interior.
struct HullBridge {
    bool found = false;
    double X1 = 0.0;
    double X2 = 0.0;
    double slope = 0.0;
};
HullBridge hull_bridge(const WaveMode& mode, double z, double t, int samples = 1000000);

/// Gaussian curvature of E dX² + G dz² with E = f, G = q_g f, by central
/// differences of f on a stencil of width h (Brioschi formula). Returns the
/// scalar curvature 2K.
double slice_curvature_fd(const WaveMode& mode, double X, double z, double t, double h = 1e-3);

/// g(u, v) defined through α ∧ (u ⌟ ω)∧(v ⌟ ω) evaluation on the 6
/// coordinate basis vectors of (x, y, z, X, Y, Z): returns the symmetric
/// 6×6 matrix (row-major) of pairings, exterior algebra done by brute-force
/// permutation sums.
std::vector<double> lychagin_roubtsov_pairings(double q_g);

/// Lagrangian vertical velocity: follows a particle with (x, y, Z)
/// conserved-in-dual-space dynamics for ±dt and differences z.
double lagrangian_w(const WaveMode& mode, double X, double Y, double z, double t,
                    double dt = 1e-4);

}  // namespace eady::verify
