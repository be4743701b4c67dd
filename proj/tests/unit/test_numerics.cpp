#include <doctest.h>

#include <cmath>

#include "eady/numerics.hpp"

using namespace eady;

TEST_CASE("bisect finds a bracketed root and rejects a missing bracket") {
    const auto g = [](double x) { return x * x - 2.0; };
    const RootResult r = bisect(g, 0.0, 2.0, 1e-14);
    CHECK(r.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(bisect(g, 2.0, 3.0, 1e-14), NumericalError);
}

TEST_CASE("safeguarded Newton converges from a poor bracket") {
    // cos x - x has one root near 0.739; Newton from the midpoint of [0, 10]
    // would leave the bracket, so the safeguard must kick in.
    const auto fdf = [](double x, double& f, double& d) {
        f = std::cos(x) - x;
        d = -std::sin(x) - 1.0;
    };
    const RootResult r = safeguarded_newton(fdf, 0.0, 10.0, 1e-15);
    CHECK(std::abs(std::cos(r.x) - r.x) < 1e-14);
    CHECK(r.x == doctest::Approx(0.7390851332151607).epsilon(1e-14));
}

TEST_CASE("adaptive Simpson integrates smooth and peaked integrands") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    const double peaked = adaptive_simpson([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0,
                                           1.0, 1e-9);
    CHECK(peaked == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
}

TEST_CASE("golden section locates an interior maximum") {
    const double x = golden_section_max([](double v) { return -(v - 0.3) * (v - 0.3); }, -1.0,
                                        2.0, 1e-10);
    CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("wrap_to and periodic_delta") {
    CHECK(wrap_to(5.0, kPi, kPi) == doctest::Approx(5.0));
    CHECK(wrap_to(7.0, kPi, kPi) == doctest::Approx(7.0 - kPi));
    CHECK(wrap_to(1.0, kPi, kPi) == doctest::Approx(1.0 + kPi));
    CHECK(wrap_to(-0.5, 0.0, 2.0) == doctest::Approx(1.5));
    CHECK(periodic_delta(0.1, 3.0, kPi) == doctest::Approx(3.0 - 0.1 - kPi));
    CHECK(periodic_delta(3.0, 0.1, kPi) == doctest::Approx(kPi - 2.9));
}
