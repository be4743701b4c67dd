#pragma once

// The generating function S(X, Y, z, t) = S₀ + η·Re(S₁) of an Eady mode and
// its partial derivatives, all in closed form. S₁ is a plane wave in the
// shifted coordinates X̃ = X - εt/2, z̃ = z - B/2, so every partial is
//   Re[(ik)^a (il)^b (-iΩ)^d ψ^(c)(z̃) e^{i(kX + lY - Ωt)}],  Ω = kε/2 + ω.

#include <utility>

#include "eady/spectral.hpp"

namespace eady {

/// Multi-index of a partial derivative in (X, Y, z, t).
struct Derivative {
    int X = 0;
    int Y = 0;
    int z = 0;
    int t = 0;
};

/// ∂^{a+b+c+d} S / ∂X^a ∂Y^b ∂z^c ∂t^d.
double partial(const WaveMode& mode, Derivative d, double X, double Y, double z, double t);

/// Same for the perturbation η·Re(S₁) alone.
double perturbation_partial(const WaveMode& mode, Derivative d, double X, double Y, double z,
                            double t);

struct JetBundle {
    double S = 0.0;
    double S_X = 0.0, S_Y = 0.0, S_z = 0.0;
    double S_XX = 0.0, S_XY = 0.0, S_YY = 0.0, S_Xz = 0.0, S_Yz = 0.0, S_zz = 0.0;
    double S_t = 0.0, S_Xt = 0.0, S_Yt = 0.0, S_zt = 0.0;
    double S_XXX = 0.0, S_XXY = 0.0, S_XYY = 0.0, S_YYY = 0.0;
    double S_XXz = 0.0, S_XYz = 0.0, S_YYz = 0.0, S_Xzz = 0.0, S_Yzz = 0.0, S_zzz = 0.0;
    bool in_domain = true;  ///< 0 <= z <= B
};

JetBundle eval_jet(const WaveMode& mode, double X, double Y, double z, double t);

/// Rotation of the (X, Y) plane aligning X' with the wavevector:
/// X' = (kX + lY)/m, Y' = (kY - lX)/m.
struct RotatedFrame {
    double c = 1.0;  ///< k/m
    double s = 0.0;  ///< l/m

    static RotatedFrame of(const WaveVector& wv) { return {wv.k / wv.m, wv.l / wv.m}; }

    std::pair<double, double> to_rotated(double X, double Y) const {
        return {c * X + s * Y, c * Y - s * X};
    }
    std::pair<double, double> from_rotated(double Xp, double Yp) const {
        return {c * Xp - s * Yp, s * Xp + c * Yp};
    }
};

std::pair<double, double> rotate_frame(const WaveVector& wv, double X, double Y);
std::pair<double, double> unrotate_frame(const WaveVector& wv, double Xp, double Yp);

/// Partial derivative in rotated coordinates (X', Y', z, t), evaluated from
/// the rotated representation
///   S₀ = X'²/2 + Y'²/2 - q_g z²/2 - z + F z (Y' cos ν + X' sin ν),
///   S₁ = ψ(z̃) e^{i(m X̃' - ωt)},  X̃' = X' - (k/m)(ε/2) t,
/// rather than by the chain rule on `partial`.
double rotated_partial(const WaveMode& mode, Derivative d, double Xp, double Yp, double z,
                       double t);

/// f = ∂²S/∂X'² (which is S_XX when l = 0). Independent of Y'; for l ≠ 0 the
/// argument is the rotated coordinate X'.
double f_field(const WaveMode& mode, double X, double z, double t);

/// ∂^{a+c+d} f / ∂X'^a ∂z^c ∂t^d.
double f_partial(const WaveMode& mode, int dX, int dz, int dt, double X, double z, double t);

/// q_g (S_XX S_YY - S_XY²) + S_zz.
double cs_residual(const WaveMode& mode, double X, double Y, double z, double t);

/// Same equation with all second derivatives taken in the rotated frame.
double rotated_cs_residual(const WaveMode& mode, double Xp, double Yp, double z, double t);

/// S_zt + (S_Y - Y) S_Xz + (X - S_X) S_Yz; vanishes on z = 0 and z = B.
double lid_residual(const WaveMode& mode, double X, double Y, double z, double t);

/// Cylindrical solution S = Y²/2 + C·Y·z + S'(X, z, t) built from an l = 0
/// mode (C = F). S' solves q_g S'_XX + S'_zz = 0.
class CylindricalSolution {
public:
    /// Throws ParameterError unless mode.wavevector.l == 0.
    explicit CylindricalSolution(WaveMode mode);

    const WaveMode& mode() const noexcept { return mode_; }
    const EadyParams& params() const noexcept { return mode_.params; }
    double C() const noexcept { return mode_.params.F(); }

    /// ∂^{a+c+d} S' / ∂X^a ∂z^c ∂t^d.
    double sprime(int dX, int dz, int dt, double X, double z, double t) const;
    double sprime(double X, double z, double t) const { return sprime(0, 0, 0, X, z, t); }

    /// q_g S'_XX + S'_zz.
    double harmonic_residual(double X, double z, double t) const;

    /// Period of S' - X²/2 in X.
    double period() const noexcept;

private:
    WaveMode mode_;
};

}  // namespace eady
