#include "eady/model.hpp"

#include <cmath>
#include <sstream>

#include "eady/numerics.hpp"

namespace eady {

void DimensionalScales::validate() const {
    const struct {
        const char* name;
        double value;
    } fields[] = {{"f", f}, {"g", g}, {"theta0", theta0}, {"N", N},
                  {"U", U}, {"H", H}, {"L", L}};
    for (const auto& fld : fields) {
        if (!(fld.value > 0.0) || !std::isfinite(fld.value))
            throw ParameterError(std::string("dimensional scale '") + fld.name +
                                 "' must be strictly positive");
    }
    const double expected_N = g / (f * L);
    if (std::abs(N - expected_N) > 1e-9 * expected_N) {
        std::ostringstream msg;
        msg << "buoyancy frequency N = " << N << " is inconsistent with g/(fL) = " << expected_N;
        throw ParameterError(msg.str());
    }
}

EadyParams EadyParams::from_froude_burger(double F, double B) {
    if (!std::isfinite(F) || !std::isfinite(B))
        throw ParameterError("Froude and Burger numbers must be finite");
    if (!(B > 0.0)) throw ParameterError("Burger number B must be positive");
    const double q_g = 1.0 - F * F;
    if (!(q_g > 0.0)) {
        std::ostringstream msg;
        msg << "supercritical shear: F = " << F
            << " gives q_g = 1 - F^2 <= 0 (requires |F| < 1, got F >= 1)";
        throw ParameterError(msg.str());
    }
    return EadyParams(F, B, F * B, q_g);
}

EadyParams default_params() {
    return EadyParams::from_froude_burger(1.0 / std::sqrt(2.0), std::sqrt(2.0));
}

EadyParams params_from_scales(const DimensionalScales& s) {
    s.validate();
    return EadyParams::from_froude_burger(s.U / (s.N * s.H), s.N * s.H / (s.f * s.L));
}

double basic_state_P0(double x, double y, double z, const EadyParams& p) {
    return 0.5 * x * x + 0.5 * y * y + 0.5 * z * z - p.F() * y * z + z;
}

double basic_state_S0(double X, double Y, double z, const EadyParams& p) {
    return 0.5 * X * X + 0.5 * Y * Y - 0.5 * p.q_g() * z * z + p.F() * Y * z - z;
}

EadyParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParameterError("parameter configuration must be a JSON object");
    if (j.contains("F") || j.contains("B")) {
        if (!j.contains("F") || !j.contains("B"))
            throw ParameterError("parameter configuration needs both \"F\" and \"B\"");
        return EadyParams::from_froude_burger(j.at("F").get<double>(), j.at("B").get<double>());
    }
    DimensionalScales s;
    const std::pair<const char*, double*> keys[] = {{"U", &s.U}, {"N", &s.N}, {"H", &s.H},
                                                    {"f", &s.f}, {"L", &s.L}, {"g", &s.g},
                                                    {"theta0", &s.theta0}};
    for (const auto& [key, dst] : keys) {
        if (!j.contains(key))
            throw ParameterError(std::string("parameter configuration missing key \"") + key +
                                 "\" (give {F, B} or {U, N, H, f, L, g, theta0})");
        *dst = j.at(key).get<double>();
    }
    return params_from_scales(s);
}

nlohmann::json to_json(const EadyParams& p) {
    return {{"F", p.F()}, {"B", p.B()}, {"eps", p.eps()}, {"q_g", p.q_g()}};
}

}  // namespace eady
