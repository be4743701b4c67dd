#pragma once

// Chynoweth–Sewell fronts of cylindrical solutions. At fixed (z, t) the
// convex envelope of S′(·, z) replaces S′ on [X1, X2] by its bitangent line;
// the common slope is the physical front position x.

#include <optional>
#include <utility>
#include <vector>

#include "eady/singularity.hpp"
#include "eady/spectral.hpp"

namespace eady {

struct FrontSection {
    double z = 0.0;
    double t = 0.0;
    double X1 = 0.0;
    double X2 = 0.0;
    double x_front = 0.0;  ///< common tangent slope S′_X(X1) = S′_X(X2)
    double S_at_X1 = 0.0;
    double S_at_X2 = 0.0;
    bool degenerate = false;  ///< X2 - X1 below the tip width (or exact tangency)
    int iterations = 0;
    bool used_fallback = false;

    double jump_X() const { return X2 - X1; }
};

struct EnvelopeOptions {
    double residual_tol = 1e-12;
    int max_iterations = 60;
    double degenerate_width = 1e-6;
    double tangency_tol = 1e-10;  ///< |min f| at or below this is an exact tangency
};

/// Envelope section of the l = 0 mode at (z, t) for the concave region whose
/// centre (minimum of f) lies in [window.lo, window.lo + period). Returns
/// nullopt when f > 0 on the whole level. Solves the bitangent system by
/// damped Newton from inflection-point seeds; falls back to bisection on the
/// tangent slope. Throws ParameterError for l ≠ 0 and NumericalError if both
/// solvers fail.
std::optional<FrontSection> envelope_section(const WaveMode& mode, double z, double t,
                                             XWindow window, const EnvelopeOptions& options = {});

/// Signed area ∮ X dx of the loop formed by the fold curve x = S′_X(X),
/// X ∈ [X1, X2], closed by the chord between its endpoints. Zero exactly when
/// the Maxwell rule holds. Quadrature by adaptive Simpson (1e-10).
double equal_area_residual(const FrontSection& section, const WaveMode& mode);

struct FrontSurface {
    double t = 0.0;
    std::vector<double> z_grid;
    std::vector<std::optional<FrontSection>> levels;  ///< one entry per z_grid value
    std::vector<double> tips;                         ///< heights where sections terminate
    std::vector<std::pair<double, double>> spans;     ///< contiguous z-runs with sections

    std::vector<FrontSection> sections() const;
};

/// Uniform interior grid z_j = B (j + 1)/(n + 1), j = 0..n-1.
std::vector<double> interior_z_grid(const EadyParams& p, int n);

/// Sections on every level, followed level to level so the front is
/// continuous in X; the first level looks for its concave region in
/// [X_origin, X_origin + period). Tips are located by bisection on
/// min_X f(X, z, t) = 0.
FrontSurface front_surface(const WaveMode& mode, double t, const std::vector<double>& z_grid,
                           double X_origin = kLandmarkOrigin,
                           const EnvelopeOptions& options = {});

FrontSurface front_surface(const WaveMode& mode, double t, int z_levels = 512);

struct RankineHugoniotRow {
    double z = 0.0;
    double lhs = 0.0;  ///< dx_front/dz by central differences
    double rhs = 0.0;  ///< -[[Z]]/[[X]] = [[S_z]]/[[X]]
    double rel_error = 0.0;
};

struct RankineHugoniotReport {
    std::vector<RankineHugoniotRow> rows;
    double max_rel_error = 0.0;
};

/// Compares the front slope with the jump ratio at interior points of each
/// contiguous run; levels whose stencil touches a section with [[X]] < 1e-6
/// are skipped. Throws ParameterError if no run has three sections.
RankineHugoniotReport rankine_hugoniot_check(const FrontSurface& surface, const WaveMode& mode);

}  // namespace eady
