#include "eady/wavefield.hpp"

#include <cmath>
#include <complex>

#include "eady/numerics.hpp"

namespace eady {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx base, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

// Ω = kε/2 + ω: time frequency of the wave at fixed X.
cplx lab_frequency(const WaveMode& mode) {
    return 0.5 * mode.wavevector.k * mode.params.eps() + mode.omega.value();
}

double basic_partial(const EadyParams& p, Derivative d, double X, double Y, double z) {
    if (d.t > 0) return 0.0;
    const int order = d.X + d.Y + d.z;
    const double F = p.F();
    const double q = p.q_g();
    switch (order) {
        case 0:
            return basic_state_S0(X, Y, z, p);
        case 1:
            if (d.X == 1) return X;
            if (d.Y == 1) return Y + F * z;
            return -q * z + F * Y - 1.0;
        case 2:
            if (d.X == 2 || d.Y == 2) return 1.0;
            if (d.z == 2) return -q;
            if (d.Y == 1 && d.z == 1) return F;
            return 0.0;
        default:
            return 0.0;
    }
}

// Rotated basic state S₀ = X'²/2 + Y'²/2 - q z²/2 - z + F z (Y' cos ν + X' sin ν).
double rotated_basic_partial(const WaveMode& mode, Derivative d, double Xp, double Yp,
                             double z) {
    if (d.t > 0) return 0.0;
    const double F = mode.params.F();
    const double q = mode.params.q_g();
    const double cos_nu = mode.wavevector.k / mode.wavevector.m;
    const double sin_nu = mode.wavevector.l / mode.wavevector.m;
    const int order = d.X + d.Y + d.z;
    switch (order) {
        case 0:
            return 0.5 * Xp * Xp + 0.5 * Yp * Yp - 0.5 * q * z * z - z +
                   F * z * (Yp * cos_nu + Xp * sin_nu);
        case 1:
            if (d.X == 1) return Xp + F * z * sin_nu;
            if (d.Y == 1) return Yp + F * z * cos_nu;
            return -q * z - 1.0 + F * (Yp * cos_nu + Xp * sin_nu);
        case 2:
            if (d.X == 2 || d.Y == 2) return 1.0;
            if (d.z == 2) return -q;
            if (d.X == 1 && d.z == 1) return F * sin_nu;
            if (d.Y == 1 && d.z == 1) return F * cos_nu;
            return 0.0;
        default:
            return 0.0;
    }
}

}  // namespace

double perturbation_partial(const WaveMode& mode, Derivative d, double X, double Y, double z,
                            double t) {
    if (mode.eta == 0.0) return 0.0;
    const WaveVector& wv = mode.wavevector;
    const cplx I(0.0, 1.0);
    const cplx Omega = lab_frequency(mode);
    const double z_shifted = z - 0.5 * mode.params.B();
    // e^{i(kX + lY - Ωt)} = e^{Ω_i t} e^{i(kX + lY - Ω_r t)}
    const double phase = wv.k * X + wv.l * Y - Omega.real() * t;
    const cplx wave = std::exp(Omega.imag() * t) * cplx(std::cos(phase), std::sin(phase));
    const cplx factor = ipow(I * wv.k, d.X) * ipow(I * wv.l, d.Y) * ipow(-I * Omega, d.t);
    return mode.eta * std::real(factor * mode.profile(z_shifted, d.z) * wave);
}

double partial(const WaveMode& mode, Derivative d, double X, double Y, double z, double t) {
    return basic_partial(mode.params, d, X, Y, z) + perturbation_partial(mode, d, X, Y, z, t);
}

JetBundle eval_jet(const WaveMode& mode, double X, double Y, double z, double t) {
    const auto S = [&](int a, int b, int c, int d) {
        return partial(mode, {a, b, c, d}, X, Y, z, t);
    };
    JetBundle j;
    j.S = S(0, 0, 0, 0);
    j.S_X = S(1, 0, 0, 0);
    j.S_Y = S(0, 1, 0, 0);
    j.S_z = S(0, 0, 1, 0);
    j.S_XX = S(2, 0, 0, 0);
    j.S_XY = S(1, 1, 0, 0);
    j.S_YY = S(0, 2, 0, 0);
    j.S_Xz = S(1, 0, 1, 0);
    j.S_Yz = S(0, 1, 1, 0);
    j.S_zz = S(0, 0, 2, 0);
    j.S_t = S(0, 0, 0, 1);
    j.S_Xt = S(1, 0, 0, 1);
    j.S_Yt = S(0, 1, 0, 1);
    j.S_zt = S(0, 0, 1, 1);
    j.S_XXX = S(3, 0, 0, 0);
    j.S_XXY = S(2, 1, 0, 0);
    j.S_XYY = S(1, 2, 0, 0);
    j.S_YYY = S(0, 3, 0, 0);
    j.S_XXz = S(2, 0, 1, 0);
    j.S_XYz = S(1, 1, 1, 0);
    j.S_YYz = S(0, 2, 1, 0);
    j.S_Xzz = S(1, 0, 2, 0);
    j.S_Yzz = S(0, 1, 2, 0);
    j.S_zzz = S(0, 0, 3, 0);
    j.in_domain = z >= 0.0 && z <= mode.params.B();
    return j;
}

std::pair<double, double> rotate_frame(const WaveVector& wv, double X, double Y) {
    return RotatedFrame::of(wv).to_rotated(X, Y);
}

std::pair<double, double> unrotate_frame(const WaveVector& wv, double Xp, double Yp) {
    return RotatedFrame::of(wv).from_rotated(Xp, Yp);
}

double rotated_partial(const WaveMode& mode, Derivative d, double Xp, double Yp, double z,
                       double t) {
    double value = rotated_basic_partial(mode, d, Xp, Yp, z);
    if (mode.eta == 0.0 || d.Y > 0) return value;
    const WaveVector& wv = mode.wavevector;
    const cplx I(0.0, 1.0);
    const cplx omega = mode.omega.value();
    const double drift = (wv.k / wv.m) * 0.5 * mode.params.eps();
    const double z_shifted = z - 0.5 * mode.params.B();
    // e^{i(m X̃' - ωt)} with X̃' = X' - drift·t
    const double phase = wv.m * (Xp - drift * t) - omega.real() * t;
    const cplx wave = std::exp(omega.imag() * t) * cplx(std::cos(phase), std::sin(phase));
    const cplx factor = ipow(I * wv.m, d.X) * ipow(-I * (wv.m * drift + omega), d.t);
    value += mode.eta * std::real(factor * mode.profile(z_shifted, d.z) * wave);
    return value;
}

double f_field(const WaveMode& mode, double X, double z, double t) {
    return rotated_partial(mode, {2, 0, 0, 0}, X, 0.0, z, t);
}

double f_partial(const WaveMode& mode, int dX, int dz, int dt, double X, double z, double t) {
    return rotated_partial(mode, {2 + dX, 0, dz, dt}, X, 0.0, z, t);
}

double cs_residual(const WaveMode& mode, double X, double Y, double z, double t) {
    const double Sxx = partial(mode, {2, 0, 0, 0}, X, Y, z, t);
    const double Syy = partial(mode, {0, 2, 0, 0}, X, Y, z, t);
    const double Sxy = partial(mode, {1, 1, 0, 0}, X, Y, z, t);
    const double Szz = partial(mode, {0, 0, 2, 0}, X, Y, z, t);
    return mode.params.q_g() * (Sxx * Syy - Sxy * Sxy) + Szz;
}

double rotated_cs_residual(const WaveMode& mode, double Xp, double Yp, double z, double t) {
    const double Sxx = rotated_partial(mode, {2, 0, 0, 0}, Xp, Yp, z, t);
    const double Syy = rotated_partial(mode, {0, 2, 0, 0}, Xp, Yp, z, t);
    const double Sxy = rotated_partial(mode, {1, 1, 0, 0}, Xp, Yp, z, t);
    const double Szz = rotated_partial(mode, {0, 0, 2, 0}, Xp, Yp, z, t);
    return mode.params.q_g() * (Sxx * Syy - Sxy * Sxy) + Szz;
}

double lid_residual(const WaveMode& mode, double X, double Y, double z, double t) {
    const JetBundle j = eval_jet(mode, X, Y, z, t);
    return j.S_zt + (j.S_Y - Y) * j.S_Xz + (X - j.S_X) * j.S_Yz;
}

CylindricalSolution::CylindricalSolution(WaveMode mode) : mode_(std::move(mode)) {
    if (mode_.wavevector.l != 0.0)
        throw ParameterError("cylindrical solutions require an X-travelling mode (l = 0)");
}

double CylindricalSolution::sprime(int dX, int dz, int dt, double X, double z, double t) const {
    // S' = S - Y²/2 - C·Y·z evaluated at Y = 0.
    double value = perturbation_partial(mode_, {dX, 0, dz, dt}, X, 0.0, z, t);
    if (dt > 0) return value;
    const double q = mode_.params.q_g();
    if (dX == 0 && dz == 0) value += 0.5 * X * X - 0.5 * q * z * z - z;
    else if (dX == 1 && dz == 0) value += X;
    else if (dX == 2 && dz == 0) value += 1.0;
    else if (dX == 0 && dz == 1) value += -q * z - 1.0;
    else if (dX == 0 && dz == 2) value += -q;
    return value;
}

double CylindricalSolution::harmonic_residual(double X, double z, double t) const {
    return mode_.params.q_g() * sprime(2, 0, 0, X, z, t) + sprime(0, 2, 0, X, z, t);
}

double CylindricalSolution::period() const noexcept {
    return 2.0 * kPi / std::abs(mode_.wavevector.k);
}

}  // namespace eady
