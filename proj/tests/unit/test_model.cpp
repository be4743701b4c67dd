#include <doctest.h>

#include <cmath>
#include <random>

#include "eady/model.hpp"
#include "eady/numerics.hpp"

using namespace eady;

namespace {

DimensionalScales scales_for(double F, double B) {
    // Pick f, g, L, then N = g/(fL), H from B and U from F.
    DimensionalScales s;
    s.f = 1e-4;
    s.g = 9.81;
    s.theta0 = 300.0;
    s.L = 1e6;
    s.N = s.g / (s.f * s.L);
    s.H = B * s.f * s.L / s.N;
    s.U = F * s.N * s.H;
    return s;
}

}  // namespace

TEST_CASE("params_from_scales reproduces the reference parameter choice") {
    const EadyParams p = params_from_scales(scales_for(1.0 / std::sqrt(2.0), std::sqrt(2.0)));
    CHECK(p.F() == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(p.B() == doctest::Approx(1.41421).epsilon(1e-5));
    CHECK(p.eps() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.q_g() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(p.F() * p.B() - p.eps()) < 1e-14);
}

TEST_CASE("no shear gives unit potential vorticity") {
    const EadyParams p = EadyParams::from_froude_burger(0.0, 1.0);
    CHECK(p.eps() == 0.0);
    CHECK(p.q_g() == 1.0);
}

TEST_CASE("q_g > 0 boundary") {
    const EadyParams p = EadyParams::from_froude_burger(0.999, 1.0);
    CHECK(p.q_g() == doctest::Approx(0.001999).epsilon(1e-12));
    CHECK_THROWS_AS(EadyParams::from_froude_burger(1.0, 1.0), ParameterError);
    try {
        (void)EadyParams::from_froude_burger(1.2, 1.0);
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("F >= 1") != std::string::npos);
    }
    CHECK_THROWS_AS(EadyParams::from_froude_burger(0.5, 0.0), ParameterError);
}

TEST_CASE("dimensional scales are validated") {
    DimensionalScales s = scales_for(0.5, 1.0);
    CHECK_NOTHROW(s.validate());
    s.N *= 1.01;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = scales_for(0.5, 1.0);
    s.theta0 = 0.0;
    CHECK_THROWS_AS(params_from_scales(s), ParameterError);
}

TEST_CASE("basic state values") {
    const EadyParams p = default_params();
    CHECK(basic_state_P0(0, 0, 0, p) == 0.0);
    CHECK(basic_state_P0(1, 1, 1, p) == doctest::Approx(2.5 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(basic_state_S0(0, 0, 0, p) == 0.0);
}

TEST_CASE("det Hess(P0) = q_g by finite differences") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double F : {0.0, 0.3, 1.0 / std::sqrt(2.0), 0.95}) {
        const EadyParams p = EadyParams::from_froude_burger(F, 1.3);
        const double h = 1e-3;
        for (int n = 0; n < 100; ++n) {
            const double r[3] = {u(rng), u(rng), u(rng)};
            const auto P = [&](int i, int j, double si, double sj) {
                double v[3] = {r[0], r[1], r[2]};
                v[i] += si;
                v[j] += sj;
                return basic_state_P0(v[0], v[1], v[2], p);
            };
            double H[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    H[i][j] = (P(i, j, h, h) - P(i, j, h, -h) - P(i, j, -h, h) + P(i, j, -h, -h)) /
                              (4 * h * h);
            const double det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
                               H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                               H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
            CHECK(std::abs(det - p.q_g()) < 1e-6);
        }
    }
}

TEST_CASE("Legendre round trip S0 = Xx + Yy - P0") {
    const EadyParams p = default_params();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 0; n < 200; ++n) {
        const double x = u(rng), y = u(rng), z = u(rng);
        const double X = x;                  // ∂P0/∂x
        const double Y = y - p.F() * z;      // ∂P0/∂y
        const double S = X * x + Y * y - basic_state_P0(x, y, z, p);
        CHECK(std::abs(S - basic_state_S0(X, Y, z, p)) < 1e-12);
    }
}

TEST_CASE("Chynoweth-Sewell residual of S0 vanishes") {
    // q_g (S_XX S_YY - S_XY²) + S_zz with S_XX = S_YY = 1, S_XY = 0, S_zz = -q_g.
    const EadyParams p = EadyParams::from_froude_burger(0.4, 2.0);
    const double h = 1e-3;
    const auto S = [&](double X, double Y, double z) { return basic_state_S0(X, Y, z, p); };
    const double Sxx = (S(1 + h, 0.5, 0.2) - 2 * S(1, 0.5, 0.2) + S(1 - h, 0.5, 0.2)) / (h * h);
    const double Syy = (S(1, 0.5 + h, 0.2) - 2 * S(1, 0.5, 0.2) + S(1, 0.5 - h, 0.2)) / (h * h);
    const double Szz = (S(1, 0.5, 0.2 + h) - 2 * S(1, 0.5, 0.2) + S(1, 0.5, 0.2 - h)) / (h * h);
    CHECK(std::abs(p.q_g() * Sxx * Syy + Szz) < 1e-7);
}

TEST_CASE("JSON parameter sources") {
    const EadyParams a = params_from_json(nlohmann::json{{"F", 0.5}, {"B", 2.0}});
    CHECK(a.eps() == doctest::Approx(1.0));
    const DimensionalScales s = scales_for(0.5, 2.0);
    const EadyParams b = params_from_json(nlohmann::json{{"U", s.U}, {"N", s.N}, {"H", s.H},
                                                         {"f", s.f}, {"L", s.L}, {"g", s.g},
                                                         {"theta0", s.theta0}});
    CHECK(b.F() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.B() == doctest::Approx(2.0).epsilon(1e-12));
    const nlohmann::json out = to_json(a);
    CHECK(out.at("q_g").get<double>() == doctest::Approx(0.75));
    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"F", 0.5}}), ParameterError);
}
