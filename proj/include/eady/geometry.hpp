#pragma once

// Lychagin–Roubtsov geometry of an Eady solution. The Monge–Ampère pair
// (ω, α) defines a flat metric g_α of signature (3, 3) on T*R³; its pull-back
// h_α to the Lagrangian submanifold L_t is Riemannian where f > 0 and
// Lorentzian where f < 0, and the scalar curvature of L_t has the sign of f.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eady/singularity.hpp"
#include "eady/spectral.hpp"

namespace eady {

struct MongeAmpereStructure {
    double q_g = 0.5;  ///< α = dX∧dY∧dZ - q_g dx∧dy∧dz, ω canonical
};

using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Bilinear form of g_α in the basis (x, y, z, X, Y, Z). Each conjugate pair
/// (x, X), (y, Y), (z, Z) pairs to q_g, i.e. the quadratic form is
/// 2 q_g (dx dX + dy dY + dz dZ).
struct AmbientMetric {
    double q_g = 0.5;
    Matrix6 G = Matrix6::Zero();

    /// Coefficient of the symmetric product dx_i dX_i in the quadratic form.
    double pair_coefficient() const { return 2.0 * q_g; }
};

/// Throws ParameterError unless q_g > 0.
AmbientMetric ambient_metric(double q_g);
inline AmbientMetric ambient_metric(const MongeAmpereStructure& s) { return ambient_metric(s.q_g); }

/// The same metric in the basis (x, y, z, X′, Y′, Z) with (X′, Y′) rotated to
/// the wavevector.
AmbientMetric ambient_metric_rotated(double q_g, const WaveVector& wv);

/// h_α in coordinates (X, Y, z); X–z and Y–z terms vanish identically.
struct PullbackMetric {
    double h_XX = 0.0;
    double h_XY = 0.0;
    double h_YY = 0.0;
    double h_zz = 0.0;

    Eigen::Matrix3d matrix() const;
    double det() const { return (h_XX * h_YY - h_XY * h_XY) * h_zz; }
};

/// h = 2q_g (S_XX dX² + 2 S_XY dX dY + S_YY dY² - S_zz dz²) from the jet.
PullbackMetric pullback(const WaveMode& mode, double X, double Y, double z, double t);

/// Jᵀ G J for the embedding (X, Y, z) -> (S_X, S_Y, z, X, Y, -S_z); keeps the
/// cross terms so their cancellation can be checked.
Eigen::Matrix3d pullback_direct(const WaveMode& mode, double X, double Y, double z, double t);

/// Pull-back in rotated coordinates (X′, Y′, z) computed from the rotated
/// representation of S.
PullbackMetric rotated_pullback(const WaveMode& mode, double Xp, double Yp, double z, double t);

/// Product form 2q_g (f′ (dX′² + q_g dz²) + dY′²), f′ = S_X′X′.
PullbackMetric product_form_pullback(const WaveMode& mode, double Xp, double z, double t);

/// Pull-back in (X, Y, z) re-expressed in (X′, Y′, z): Rᵀ h R.
Eigen::Matrix3d to_rotated_frame(const WaveVector& wv, const Eigen::Matrix3d& h);

enum class Signature { riemannian, pseudo_riemannian, degenerate };
std::string to_string(Signature s);

inline constexpr double kSignatureTol = 1e-6;
inline constexpr double kCurvatureGuard = 1e-3;

Signature classify_signature(double f, double tol = kSignatureTol);

struct CurvatureSample {
    double X = 0.0;
    double z = 0.0;
    double t = 0.0;
    double f = 0.0;
    std::optional<double> Sc;  ///< unset on the degenerate set
    Signature signature = Signature::degenerate;
    double numerator = 0.0;           ///< f_z² + q_g f_X² (never negative)
    double harmonic_residual = 0.0;   ///< f_zz + q_g f_XX, identically zero
};

/// Sc = (f_z² + q_g f_X²)/(q_g f³) for l = 0 modes. Throws ParameterError
/// for l ≠ 0 (use rotated_curvature).
CurvatureSample scalar_curvature(const WaveMode& mode, double X, double z, double t,
                                 double tol = kSignatureTol);

/// The unreduced formula with the -f (f_zz + q_g f_XX) term kept. Throws
/// NumericalError when |f| <= tol.
double scalar_curvature_unreduced(const WaveMode& mode, double X, double z, double t,
                                  double tol = kSignatureTol);

/// Sc from f′ = S_X′X′ evaluated through the rotated representation; valid
/// for any wavevector.
CurvatureSample rotated_curvature(const WaveMode& mode, double Xp, double z, double t,
                                  double tol = kSignatureTol);

struct CurvatureGrid {
    int nx = 256;
    int nz = 128;
    double X_lo = kLandmarkOrigin;  ///< sweep covers one period from here
    double guard = kCurvatureGuard;  ///< Sc reported only where |f| > guard
};

struct CurvatureMaximum {
    double z = 0.0;
    double X = 0.0;
    double Sc = 0.0;
    bool found = false;
};

struct CurvatureField {
    double t = 0.0;
    std::vector<CurvatureSample> samples;   ///< row-major in z, then X
    std::vector<CurvatureMaximum> maxima;   ///< one per z row
};

CurvatureField curvature_field(const WaveMode& mode, double t, const CurvatureGrid& grid = {});

/// Max of Sc over one period on a single level, refined by golden section.
CurvatureMaximum level_curvature_maximum(const WaveMode& mode, double z, double t,
                                         int samples = 512, double X_lo = kLandmarkOrigin);

/// Least-squares slope of log|Sc| against log|f| along the gradient line
/// through a fold point (X0, z0) with f = 0, at offsets s in [s_min, s_max]
/// on the side where f has the sign given by `side`.
double fold_blowup_slope(const WaveMode& mode, double X0, double z0, double t, double s_min,
                         double s_max, int side = +1, int samples = 12);

}  // namespace eady
