#pragma once

// Singular locus ΣL_t = {f = 0, 0 <= z <= B} of a cylindrical (or
// pre-rotated) Eady wave, its A₂/A₃ classification and the catastrophe
// times at which the first cusps appear (t′, on the lids) and coalesce
// (t″, at mid-depth).

#include <string_view>
#include <vector>

#include "eady/spectral.hpp"

namespace eady {

struct XWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// 2π/m, the X'-period of the wave at fixed (z, t).
double mode_period(const WaveMode& mode);

/// Representative origin for reported landmark positions: X values are
/// returned in [π, π + period).
inline constexpr double kLandmarkOrigin = 3.14159265358979323846;

enum class SingularKind { A2_fold, A3_cusp, higher_order };

std::string_view to_string(SingularKind kind);

struct SingularPoint {
    double X = 0.0;
    double z = 0.0;
    double t = 0.0;
    SingularKind kind = SingularKind::A2_fold;
};

enum class LocusTopology { empty, two_arcs_with_cusps, merged, two_fold_arcs, unclassified };

std::string_view to_string(LocusTopology topology);

/// One connected component of the traced locus, ordered along the curve.
/// X is unwrapped along the arc, so an arc crossing the window edge runs
/// continuously past it.
struct SingularArc {
    std::vector<SingularPoint> points;
    bool touches_bottom = false;  ///< reaches z = 0
    bool touches_top = false;     ///< reaches z = B
    int cusp_count = 0;
};

struct SingularCurve {
    double t = 0.0;
    std::vector<SingularArc> arcs;
    std::vector<SingularPoint> cusps;  ///< A₃ and higher-order points
    LocusTopology topology = LocusTopology::empty;

    /// All arc points, arc after arc.
    std::vector<SingularPoint> points() const;
};

struct SingularTolerances {
    double f_tol = 1e-10;     ///< membership |f|
    double grad_tol = 1e-6;   ///< |∂f/∂X| (and |∂f/∂z|) for A₃ / higher order
};

struct LocusOptions {
    int z_levels = 512;
    int seeds_per_period = 32;
    SingularTolerances tol;
};

/// Roots of f(·, z, t) in [lo, lo + period), sorted. Each root is bracketed
/// between consecutive critical points of f and refined by safeguarded
/// Newton to |f| below `f_tol`.
std::vector<double> level_roots(const WaveMode& mode, double z, double t, double lo,
                                double f_tol = 1e-13, int seeds_per_period = 32);

struct LevelExtremum {
    double X = 0.0;
    double f = 0.0;
};

/// Minimum of f(·, z, t) over one period starting at lo (critical-point
/// search, no closed form).
LevelExtremum level_minimum(const WaveMode& mode, double z, double t, double lo,
                            int seeds_per_period = 32);

/// Traces ΣL_t over the period [window.lo, window.lo + period) by per-level
/// root refinement on a z-grid including both lids, linking by nearest
/// neighbour and locating A₃ points with Newton on {f = 0, ∂f/∂X = 0}.
/// Throws ParameterError if the window is narrower than one period.
SingularCurve singular_locus(const WaveMode& mode, double t, XWindow window,
                             const LocusOptions& options = {});

/// Throws NumericalError if |f| >= tol.f_tol at the point.
SingularKind classify_point(const WaveMode& mode, double X, double z, double t,
                            const SingularTolerances& tol = {});

/// At fixed (z, t): f - 1 = a cos(mX') + b sin(mX'), so min f = 1 - amplitude
/// and the minimiser is X_min ∈ [0, period).
struct LevelEnvelope {
    double a = 0.0;
    double b = 0.0;
    double amplitude = 0.0;
    double X_min = 0.0;
};

LevelEnvelope level_envelope(const WaveMode& mode, double z, double t);

/// Earliest t with min_X f(X, z, t) = 0, by bracketed root finding in t.
/// Throws NumericalError for ω_i <= 0 or η <= 0.
double catastrophe_time_at(const WaveMode& mode, double z);

struct CatastropheTimes {
    double t_prime = 0.0;          ///< first A₃ on a lid
    double t_double_prime = 0.0;   ///< A₃ coalescence at z = B/2
    double z_prime = 0.0;          ///< lid where t′ is attained
    double X_prime = 0.0;          ///< in [π, π + period)
    double X_double_prime = 0.0;   ///< in [π, π + period)
};

CatastropheTimes catastrophe_times(const WaveMode& mode);

}  // namespace eady
