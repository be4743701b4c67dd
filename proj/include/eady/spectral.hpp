#pragma once

#include <complex>

#include "eady/model.hpp"

namespace eady {

/// Horizontal wavevector. nu is the direction angle atan2(l, k) so that
/// cos(nu) = k/m for every quadrant.
struct WaveVector {
    double k = 0.0;
    double l = 0.0;
    double m = 0.0;
    double nu = 0.0;

    /// Throws ParameterError if k = l = 0.
    static WaveVector from_kl(double k, double l);
    static WaveVector from_polar(double m, double nu);
};

/// Frequency in the frame co-moving with the mid-level flow, X̃ = X - εt/2.
struct ComplexFrequency {
    double re = 0.0;
    double im = 0.0;  ///< growth rate ω_i

    std::complex<double> value() const { return {re, im}; }
    bool neutral() const { return im == 0.0; }
};

/// Which root of ω² = -cos²ν·φ to return. For unstable wavenumbers
/// `growing` gives im > 0 and `decaying` its conjugate; for neutral
/// wavenumbers they select re >= 0 and re <= 0 respectively.
enum class Branch { growing, decaying };

/// ψ(z̃) = C1·e^{decay·z̃} + C2·e^{-decay·z̃}, z̃ = z - B/2.
struct VerticalProfile {
    std::complex<double> C1;
    std::complex<double> C2;
    double decay = 0.0;  ///< m·√q_g

    /// d^order ψ / dz̃^order at the shifted height z̃.
    std::complex<double> operator()(double z_shifted, int order = 0) const;
};

/// A single Eady normal mode S = S₀ + η·Re(ψ(z̃)·e^{i(kX̃ + lY - ωt)}).
/// Construct with make_mode so that omega and profile are consistent.
struct WaveMode {
    EadyParams params;
    WaveVector wavevector;
    ComplexFrequency omega;
    VerticalProfile profile;
    double eta = 0.0;
};

/// φ(m) = (F²/q_g)(1 - x·coth x)(x·tanh x - 1), x = B·m·√q_g/2.
double dispersion_rhs(double m, const EadyParams& p);

/// Root of ω² = -cos²ν·φ(m).
ComplexFrequency solve_omega(const WaveVector& wv, const EadyParams& p,
                             Branch branch = Branch::growing);

/// |ω² + cos²ν·φ(m)|.
double dispersion_residual(const WaveVector& wv, const ComplexFrequency& omega,
                           const EadyParams& p);

/// Neutral wavenumber m* > 0 with φ(m*) = 0 (x* tanh x* = 1). Long waves
/// m < m* are unstable.
double neutral_wavenumber(const EadyParams& p);

struct GrowthMaximum {
    double m = 0.0;
    double growth = 0.0;  ///< ω_i at nu = 0
};

/// Wavenumber of fastest growth over (0, m*) for nu = 0.
GrowthMaximum max_growth(const EadyParams& p);

/// Relative residuals of the two rigid-lid linear boundary relations.
struct BoundaryResiduals {
    double lower = 0.0;  ///< z = 0
    double upper = 0.0;  ///< z = B
};

BoundaryResiduals boundary_residuals(const WaveVector& wv, const ComplexFrequency& omega,
                                     const VerticalProfile& profile, const EadyParams& p);

/// Hoskins' particular choice
///   C1 =  e^{x}(2Fk - m√q_g(kε + 2ω)),
///   C2 = -e^{-x}(2Fk + m√q_g(kε + 2ω)),   x = B·m·√q_g/2,
/// which satisfies the z = 0 relation identically. Throws NumericalError
/// when the z = B relation is violated beyond 1e-10 (ω off the dispersion
/// curve).
VerticalProfile boundary_coefficients(const WaveVector& wv, const ComplexFrequency& omega,
                                      const EadyParams& p);

inline constexpr double kBoundaryTolerance = 1e-10;

/// Mode with ω from solve_omega and the particular boundary coefficients.
/// Throws ParameterError for eta < 0.
WaveMode make_mode(const EadyParams& p, const WaveVector& wv, double eta,
                   Branch branch = Branch::growing);

/// F = 1/√2, B = √2, k = 2, l = 0.
WaveMode default_mode(double eta = 0.01);

}  // namespace eady
