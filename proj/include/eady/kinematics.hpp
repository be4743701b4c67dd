#pragma once

// From the Lagrangian submanifold to physical space: the projection
// (X, Y, z) -> (S_X, S_Y, z), the multivalued geopotential P = Xx + Yy - S,
// and the velocity field induced by L_t. Multivaluedness is removed by
// excising the interiors of Chynoweth–Sewell front intervals.

#include <optional>
#include <vector>

#include "eady/fronts.hpp"
#include "eady/spectral.hpp"

namespace eady {

struct Velocity {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};

struct PhaseSample {
    double X = 0.0, Y = 0.0, z = 0.0;  ///< dual coordinates
    double x = 0.0, y = 0.0;           ///< physical position (height is z)
    double Z = 0.0;                    ///< -S_z, the potential temperature θ
    double u_g = 0.0, v_g = 0.0;
    std::optional<Velocity> velocity;
    bool regular = true;  ///< false strictly inside a front interval
};

/// Moving window of width π centred on X0 + (t - t0)/2.
struct ObservationWindow {
    double X0 = 0.0;
    double t0 = 0.0;
    double half_width = 0.5 * 3.14159265358979323846;

    double center(double t) const { return X0 + 0.5 * (t - t0); }
    double lo(double t) const { return center(t) - half_width; }
    double hi(double t) const { return center(t) + half_width; }

    /// Anchored on the first A₃ point: X0 = X′, t0 = t′.
    static ObservationWindow anchored_at_first_cusp(const WaveMode& mode);
};

/// Positions, Z and geostrophic wind from the jet. For l = 0 modes the
/// regular flag is set from the front section at (z, t); oblique modes have
/// no front construction and are always flagged regular.
PhaseSample project(const WaveMode& mode, double X, double Y, double z, double t);

/// det d(x, y, z)/d(X, Y, z) = S_XX S_YY - S_XY².
double projection_jacobian(const WaveMode& mode, double X, double Y, double z, double t);

struct PSample {
    double X = 0.0;
    double z = 0.0;
    double x = 0.0;
    double y = 0.0;
    double P = 0.0;
};

/// Parametric samples of the graph of P over an (X, z) grid at fixed Y.
std::vector<PSample> multivalued_P(const WaveMode& mode, const std::vector<double>& X_grid,
                                   const std::vector<double>& z_grid, double Y, double t);

inline constexpr double kStratificationTol = 1e-8;

/// w = -(S_zt + u_g S_Xz + v_g S_Yz)/S_zz. Throws NumericalError when
/// |S_zz| <= tol (degenerate stratification, S_zz = -q_g f).
double vertical_velocity(const WaveMode& mode, double X, double Y, double z, double t,
                         double tol = kStratificationTol);

/// (u, v, w) = D(S_X, S_Y, z)/Dt along the dual flow.
Velocity full_velocity(const WaveMode& mode, double X, double Y, double z, double t,
                       double tol = kStratificationTol);

struct VelocitySample {
    double X = 0.0;
    double Y = 0.0;
    double z = 0.0;
    double x = 0.0;
    double u = 0.0;
    double w = 0.0;
    double phi = 0.0;  ///< P - x²/2 - y²/2
    bool regular = true;
};

struct SnapshotGrid {
    int nx = 128;
    int nz = 64;
    bool keep_irregular = false;
};

/// Samples over the window on the physical slice y = y_slice: Y is solved
/// from S_Y = y at each (X, z). Points inside front intervals are dropped
/// unless keep_irregular; points where the stratification guard fires are
/// always dropped.
std::vector<VelocitySample> velocity_snapshot(const WaveMode& mode, double t,
                                              const ObservationWindow& window, double y_slice,
                                              const SnapshotGrid& grid = {});

/// Preimages X of the physical point (x, z) at Y = 0 (l = 0 only), all of
/// them (`regular_only` false) or only those outside the front interval.
std::vector<double> preimages(const WaveMode& mode, double x, double z, double t,
                              bool regular_only);

/// Velocity at a physical point (x, y, z) through its regular preimage
/// (l = 0 only). Throws NumericalError if x is the front position itself.
Velocity velocity_at_physical(const WaveMode& mode, double x, double y, double z, double t);

struct FrontLimits {
    double X_left = 0.0, X_right = 0.0;
    double Z_left = 0.0, Z_right = 0.0;
};

/// One-sided limits of X and Z as the physical point crosses the front at
/// height z, taken from the regular preimages of x_front ∓ delta.
FrontLimits front_limits(const WaveMode& mode, const FrontSection& section, double delta = 1e-12);

/// Max |u| over regular points in the annulus r <= |(X, z) - (Xc, zc)| <= 2r
/// of the dual (X, z) plane at Y = 0, on an n_radial × n_angular polar grid.
/// Points where the stratification guard fires are skipped.
double max_speed_near(const WaveMode& mode, double t, double Xc, double zc, double r,
                      int n_radial = 32, int n_angular = 256);

}  // namespace eady
