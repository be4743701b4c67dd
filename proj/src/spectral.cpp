#include "eady/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eady/numerics.hpp"

namespace eady {

namespace {

double half_depth_wavenumber(double m, const EadyParams& p) {
    return 0.5 * p.B() * m * std::sqrt(p.q_g());
}

// 1 - x coth x, with the series near 0 where the direct form cancels.
double one_minus_x_coth(double x) {
    if (x < 1e-4) {
        const double x2 = x * x;
        return -x2 / 3.0 + x2 * x2 / 45.0;
    }
    return 1.0 - x / std::tanh(x);
}

}  // namespace

WaveVector WaveVector::from_kl(double k, double l) {
    const double m = std::hypot(k, l);
    if (!(m > 0.0)) throw ParameterError("wavevector must be nonzero");
    return {k, l, m, std::atan2(l, k)};
}

WaveVector WaveVector::from_polar(double m, double nu) {
    if (!(m > 0.0)) throw ParameterError("wavenumber magnitude must be positive");
    return {m * std::cos(nu), m * std::sin(nu), m, nu};
}

std::complex<double> VerticalProfile::operator()(double z_shifted, int order) const {
    const double scale = std::pow(decay, order);
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return scale * (C1 * std::exp(decay * z_shifted) + sign * C2 * std::exp(-decay * z_shifted));
}

double dispersion_rhs(double m, const EadyParams& p) {
    const double x = half_depth_wavenumber(m, p);
    const double pref = p.F() * p.F() / p.q_g();
    if (x > 50.0) return pref * (1.0 - x) * (x - 1.0);
    return pref * one_minus_x_coth(x) * (x * std::tanh(x) - 1.0);
}

ComplexFrequency solve_omega(const WaveVector& wv, const EadyParams& p, Branch branch) {
    const double cos_nu = wv.k / wv.m;
    const double phi = dispersion_rhs(wv.m, p);
    const double c2 = cos_nu * cos_nu;
    const double sign = branch == Branch::growing ? 1.0 : -1.0;
    if (phi > 0.0) return {0.0, sign * std::sqrt(c2 * phi)};
    return {sign * std::sqrt(-c2 * phi), 0.0};
}

double dispersion_residual(const WaveVector& wv, const ComplexFrequency& omega,
                           const EadyParams& p) {
    const double cos_nu = wv.k / wv.m;
    const std::complex<double> w = omega.value();
    return std::abs(w * w + cos_nu * cos_nu * dispersion_rhs(wv.m, p));
}

double neutral_wavenumber(const EadyParams& p) {
    const auto g = [](double x) { return x * std::tanh(x) - 1.0; };
    const RootResult r = bisect(g, 1e-6, 50.0, 1e-15);
    return 2.0 * r.x / (p.B() * std::sqrt(p.q_g()));
}

GrowthMaximum max_growth(const EadyParams& p) {
    const double m_star = neutral_wavenumber(p);
    const auto growth = [&p](double m) { return std::sqrt(std::max(0.0, dispersion_rhs(m, p))); };
    const double m = golden_section_max(growth, 1e-6 * m_star, m_star, 1e-10 * m_star);
    return {m, growth(m)};
}

namespace {

struct BoundaryRows {
    // upper: a1·C1 + a2·C2 = 0 at z = B;  lower: b1·C1 + b2·C2 = 0 at z = 0.
    std::complex<double> a1, a2, b1, b2;
};

BoundaryRows boundary_rows(const WaveVector& wv, const ComplexFrequency& omega,
                           const EadyParams& p) {
    const double s = wv.m * std::sqrt(p.q_g());
    const double x = 0.5 * p.B() * s;
    const double two_fk = 2.0 * p.F() * wv.k;
    const double k_eps = wv.k * p.eps();
    const std::complex<double> w = omega.value();
    const double ep = std::exp(x);
    const double em = std::exp(-x);
    return {ep * (two_fk + s * (-k_eps + 2.0 * w)), em * (two_fk + s * (k_eps - 2.0 * w)),
            em * (two_fk + s * (k_eps + 2.0 * w)), ep * (two_fk - s * (k_eps + 2.0 * w))};
}

double relative_row_residual(std::complex<double> c1, std::complex<double> c2,
                             std::complex<double> C1, std::complex<double> C2) {
    const double scale = std::abs(c1 * C1) + std::abs(c2 * C2);
    const double res = std::abs(c1 * C1 + c2 * C2);
    return scale > 0.0 ? res / scale : res;
}

}  // namespace

BoundaryResiduals boundary_residuals(const WaveVector& wv, const ComplexFrequency& omega,
                                     const VerticalProfile& profile, const EadyParams& p) {
    const BoundaryRows rows = boundary_rows(wv, omega, p);
    return {relative_row_residual(rows.b1, rows.b2, profile.C1, profile.C2),
            relative_row_residual(rows.a1, rows.a2, profile.C1, profile.C2)};
}

VerticalProfile boundary_coefficients(const WaveVector& wv, const ComplexFrequency& omega,
                                      const EadyParams& p) {
    const double s = wv.m * std::sqrt(p.q_g());
    const double x = 0.5 * p.B() * s;
    const double two_fk = 2.0 * p.F() * wv.k;
    const std::complex<double> bracket = s * (wv.k * p.eps() + 2.0 * omega.value());

    VerticalProfile prof{std::exp(x) * (two_fk - bracket), -std::exp(-x) * (two_fk + bracket), s};
    if (prof.C1 == 0.0 && prof.C2 == 0.0) {
        // k = 0 and ω = 0: every ψ satisfies both lids.
        prof.C1 = 1.0;
        prof.C2 = 1.0;
    }
    const BoundaryResiduals res = boundary_residuals(wv, omega, prof, p);
    if (res.lower > kBoundaryTolerance || res.upper > kBoundaryTolerance) {
        std::ostringstream msg;
        msg << "boundary_coefficients: omega = (" << omega.re << ", " << omega.im
            << ") is off the dispersion curve (lower residual " << res.lower
            << ", upper residual " << res.upper << ")";
        throw NumericalError(msg.str());
    }
    return prof;
}

WaveMode make_mode(const EadyParams& p, const WaveVector& wv, double eta, Branch branch) {
    if (!(eta >= 0.0)) throw ParameterError("perturbation amplitude eta must be >= 0");
    const ComplexFrequency omega = solve_omega(wv, p, branch);
    return {p, wv, omega, boundary_coefficients(wv, omega, p), eta};
}

WaveMode default_mode(double eta) {
    return make_mode(default_params(), WaveVector::from_kl(2.0, 0.0), eta);
}

}  // namespace eady
