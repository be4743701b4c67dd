#include "eady/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eady/numerics.hpp"
#include "eady/wavefield.hpp"

namespace eady {

namespace {

enum { ix = 0, iy = 1, iz = 2, iX = 3, iY = 4, iZ = 5 };

}  // namespace

AmbientMetric ambient_metric(double q_g) {
    if (!(q_g > 0.0)) throw ParameterError("ambient_metric: q_g must be positive");
    AmbientMetric g;
    g.q_g = q_g;
    for (int i = 0; i < 3; ++i) {
        g.G(i, i + 3) = q_g;
        g.G(i + 3, i) = q_g;
    }
    return g;
}

AmbientMetric ambient_metric_rotated(double q_g, const WaveVector& wv) {
    // dX = c dX′ - s dY′, dY = s dX′ + c dY′.
    AmbientMetric g = ambient_metric(q_g);
    const RotatedFrame R = RotatedFrame::of(wv);
    Matrix6 T = Matrix6::Identity();
    T(iX, iX) = R.c;
    T(iX, iY) = -R.s;
    T(iY, iX) = R.s;
    T(iY, iY) = R.c;
    g.G = T.transpose() * g.G * T;
    return g;
}

Eigen::Matrix3d PullbackMetric::matrix() const {
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = h_XX;
    h(0, 1) = h(1, 0) = h_XY;
    h(1, 1) = h_YY;
    h(2, 2) = h_zz;
    return h;
}

PullbackMetric pullback(const WaveMode& mode, double X, double Y, double z, double t) {
    const JetBundle j = eval_jet(mode, X, Y, z, t);
    const double c = 2.0 * mode.params.q_g();
    return {c * j.S_XX, c * j.S_XY, c * j.S_YY, -c * j.S_zz};
}

Eigen::Matrix3d pullback_direct(const WaveMode& mode, double X, double Y, double z, double t) {
    const JetBundle j = eval_jet(mode, X, Y, z, t);
    Eigen::Matrix<double, 6, 3> J = Eigen::Matrix<double, 6, 3>::Zero();
    J.row(ix) << j.S_XX, j.S_XY, j.S_Xz;
    J.row(iy) << j.S_XY, j.S_YY, j.S_Yz;
    J.row(iz) << 0.0, 0.0, 1.0;
    J.row(iX) << 1.0, 0.0, 0.0;
    J.row(iY) << 0.0, 1.0, 0.0;
    J.row(iZ) << -j.S_Xz, -j.S_Yz, -j.S_zz;
    const Matrix6& G = ambient_metric(mode.params.q_g()).G;
    return J.transpose() * G * J;
}

PullbackMetric rotated_pullback(const WaveMode& mode, double Xp, double Yp, double z, double t) {
    const auto S = [&](int a, int b, int c) { return rotated_partial(mode, {a, b, c, 0}, Xp, Yp, z, t); };
    const double c = 2.0 * mode.params.q_g();
    return {c * S(2, 0, 0), c * S(1, 1, 0), c * S(0, 2, 0), -c * S(0, 0, 2)};
}

PullbackMetric product_form_pullback(const WaveMode& mode, double Xp, double z, double t) {
    const double q = mode.params.q_g();
    const double f = rotated_partial(mode, {2, 0, 0, 0}, Xp, 0.0, z, t);
    return {2.0 * q * f, 0.0, 2.0 * q, 2.0 * q * q * f};
}

Eigen::Matrix3d to_rotated_frame(const WaveVector& wv, const Eigen::Matrix3d& h) {
    const RotatedFrame F = RotatedFrame::of(wv);
    Eigen::Matrix3d R;
    R << F.c, -F.s, 0.0, F.s, F.c, 0.0, 0.0, 0.0, 1.0;
    return R.transpose() * h * R;
}

std::string to_string(Signature s) {
    switch (s) {
        case Signature::riemannian: return "riemannian";
        case Signature::pseudo_riemannian: return "pseudo_riemannian";
        case Signature::degenerate: return "degenerate";
    }
    return "unknown";
}

Signature classify_signature(double f, double tol) {
    if (f > tol) return Signature::riemannian;
    if (f < -tol) return Signature::pseudo_riemannian;
    return Signature::degenerate;
}

namespace {

struct FJet {
    double f, f_X, f_z, f_XX, f_zz;
};

CurvatureSample from_f_jet(const FJet& d, double q, double X, double z, double t, double tol) {
    CurvatureSample s;
    s.X = X;
    s.z = z;
    s.t = t;
    s.f = d.f;
    s.signature = classify_signature(d.f, tol);
    s.numerator = d.f_z * d.f_z + q * d.f_X * d.f_X;
    s.harmonic_residual = d.f_zz + q * d.f_XX;
    if (s.signature != Signature::degenerate) s.Sc = s.numerator / (q * d.f * d.f * d.f);
    return s;
}

// Derivatives of f = S_XX through the unrotated partials.
FJet cylindrical_f_jet(const WaveMode& mode, double X, double z, double t) {
    if (mode.wavevector.l != 0.0)
        throw ParameterError("scalar_curvature: l must be 0 (use rotated_curvature)");
    const auto S = [&](int a, int c) { return partial(mode, {a, 0, c, 0}, X, 0.0, z, t); };
    return {S(2, 0), S(3, 0), S(2, 1), S(4, 0), S(2, 2)};
}

}  // namespace

CurvatureSample scalar_curvature(const WaveMode& mode, double X, double z, double t, double tol) {
    return from_f_jet(cylindrical_f_jet(mode, X, z, t), mode.params.q_g(), X, z, t, tol);
}

double scalar_curvature_unreduced(const WaveMode& mode, double X, double z, double t, double tol) {
    const FJet d = cylindrical_f_jet(mode, X, z, t);
    if (!(std::abs(d.f) > tol)) {
        std::ostringstream msg;
        msg << "scalar_curvature_unreduced: |f| = " << std::abs(d.f) << " at the singular set";
        throw NumericalError(msg.str());
    }
    const double q = mode.params.q_g();
    const double num = d.f_z * d.f_z + q * d.f_X * d.f_X - d.f * (d.f_zz + q * d.f_XX);
    return num / (q * d.f * d.f * d.f);
}

CurvatureSample rotated_curvature(const WaveMode& mode, double Xp, double z, double t, double tol) {
    const auto S = [&](int a, int c) { return rotated_partial(mode, {a, 0, c, 0}, Xp, 0.0, z, t); };
    const FJet d{S(2, 0), S(3, 0), S(2, 1), S(4, 0), S(2, 2)};
    return from_f_jet(d, mode.params.q_g(), Xp, z, t, tol);
}

namespace {

CurvatureSample curvature_any(const WaveMode& mode, double X, double z, double t) {
    return mode.wavevector.l == 0.0 ? scalar_curvature(mode, X, z, t) : rotated_curvature(mode, X, z, t);
}

}  // namespace

CurvatureField curvature_field(const WaveMode& mode, double t, const CurvatureGrid& grid) {
    if (grid.nx < 1 || grid.nz < 2) throw ParameterError("curvature_field: grid too small");
    const double P = mode_period(mode);
    const double B = mode.params.B();
    CurvatureField field;
    field.t = t;
    field.samples.reserve(static_cast<std::size_t>(grid.nx) * grid.nz);
    for (int j = 0; j < grid.nz; ++j) {
        const double z = B * j / (grid.nz - 1);
        CurvatureMaximum best;
        best.z = z;
        for (int i = 0; i < grid.nx; ++i) {
            const double X = grid.X_lo + P * i / grid.nx;
            CurvatureSample s = curvature_any(mode, X, z, t);
            if (!(std::abs(s.f) > grid.guard)) s.Sc.reset();
            if (s.Sc && (!best.found || *s.Sc > best.Sc)) {
                best.X = X;
                best.Sc = *s.Sc;
                best.found = true;
            }
            field.samples.push_back(s);
        }
        field.maxima.push_back(best);
    }
    return field;
}

CurvatureMaximum level_curvature_maximum(const WaveMode& mode, double z, double t, int samples,
                                         double X_lo) {
    const double P = mode_period(mode);
    const auto Sc = [&](double X) {
        const CurvatureSample s = curvature_any(mode, X, z, t);
        return s.Sc ? *s.Sc : -std::numeric_limits<double>::infinity();
    };
    CurvatureMaximum best;
    best.z = z;
    const double h = P / samples;
    for (int i = 0; i < samples; ++i) {
        const double X = X_lo + h * i;
        const double v = Sc(X);
        if (std::isfinite(v) && (!best.found || v > best.Sc)) {
            best.X = X;
            best.Sc = v;
            best.found = true;
        }
    }
    if (!best.found) return best;
    const double X = golden_section_max(Sc, best.X - h, best.X + h, 1e-12);
    const double v = Sc(X);
    if (v > best.Sc) {
        best.X = X;
        best.Sc = v;
    }
    return best;
}

double fold_blowup_slope(const WaveMode& mode, double X0, double z0, double t, double s_min,
                         double s_max, int side, int samples) {
    if (!(0.0 < s_min && s_min < s_max) || samples < 2)
        throw ParameterError("fold_blowup_slope: need 0 < s_min < s_max and two samples");
    const auto S = [&](int a, int c) {
        return mode.wavevector.l == 0.0 ? partial(mode, {a, 0, c, 0}, X0, 0.0, z0, t)
                                        : rotated_partial(mode, {a, 0, c, 0}, X0, 0.0, z0, t);
    };
    const double gX = S(3, 0), gz = S(2, 1);
    const double norm = std::hypot(gX, gz);
    if (!(norm > 1e-8)) throw NumericalError("fold_blowup_slope: gradient of f vanishes");
    const double dX = side * gX / norm, dz = side * gz / norm;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < samples; ++i) {
        const double s = s_min * std::pow(s_max / s_min, static_cast<double>(i) / (samples - 1));
        const CurvatureSample c = curvature_any(mode, X0 + s * dX, z0 + s * dz, t);
        if (!c.Sc) continue;
        const double lx = std::log(std::abs(c.f));
        const double ly = std::log(std::abs(*c.Sc));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw NumericalError("fold_blowup_slope: too few nondegenerate samples");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace eady
