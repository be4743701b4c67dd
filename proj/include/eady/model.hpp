#pragma once

// Dimensionless Eady basic state and its dual potential.
//
// Scalings: time 1/f, horizontal length L, vertical length f²L²/g,
// geopotential f²L², potential temperature θ₀. Every other module works
// exclusively in these dimensionless variables.

#include <json.hpp>

namespace eady {

struct DimensionalScales {
    double f = 0.0;       ///< Coriolis parameter (1/s)
    double g = 0.0;       ///< gravity (m/s²)
    double theta0 = 0.0;  ///< reference potential temperature (K)
    double N = 0.0;       ///< buoyancy frequency (1/s), must equal g/(fL)
    double U = 0.0;       ///< top-lid zonal wind (m/s)
    double H = 0.0;       ///< domain height (m)
    double L = 0.0;       ///< horizontal length (m), a free input

    /// Throws ParameterError unless every field is positive and N = g/(fL).
    void validate() const;
};

/// Froude, Burger and Rossby numbers plus the (constant) potential vorticity.
/// Only constructible through the validated factories; q_g and eps are
/// stored once at construction.
class EadyParams {
public:
    /// Throws ParameterError if B <= 0 or q_g = 1 - F² <= 0.
    static EadyParams from_froude_burger(double F, double B);

    double F() const noexcept { return F_; }
    double B() const noexcept { return B_; }
    double eps() const noexcept { return eps_; }
    double q_g() const noexcept { return q_g_; }

    friend bool operator==(const EadyParams&, const EadyParams&) = default;

private:
    EadyParams(double F, double B, double eps, double q_g)
        : F_(F), B_(B), eps_(eps), q_g_(q_g) {}

    double F_;
    double B_;
    double eps_;
    double q_g_;
};

/// F = 1/√2, B = √2 (so ε = 1, q_g = 1/2).
EadyParams default_params();

/// F = U/(NH), B = NH/(fL), ε = FB = U/(fL), q_g = 1 - F².
EadyParams params_from_scales(const DimensionalScales& scales);

/// P₀ = x²/2 + y²/2 + z²/2 - F·y·z + z.
double basic_state_P0(double x, double y, double z, const EadyParams& p);

/// S₀ = X²/2 + Y²/2 - q_g·z²/2 + F·Y·z - z.
double basic_state_S0(double X, double Y, double z, const EadyParams& p);

/// Accepts {"F", "B"} or the full dimensional set
/// {"U","N","H","f","L","g","theta0"}.
EadyParams params_from_json(const nlohmann::json& j);

/// {"F", "B", "eps", "q_g"}.
nlohmann::json to_json(const EadyParams& p);

}  // namespace eady
