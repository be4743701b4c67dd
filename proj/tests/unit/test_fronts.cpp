#include <doctest.h>

#include <cmath>
#include <random>

#include "eady/fronts.hpp"
#include "eady/numerics.hpp"
#include "eady/verify/oracles.hpp"
#include "eady/wavefield.hpp"

using namespace eady;

namespace {

const double kRt2 = std::sqrt(2.0);
const XWindow kWindow{kPi, 2.0 * kPi};

}  // namespace

TEST_CASE("no section before the first tangency") {
    const WaveMode mode = default_mode(0.01);
    for (double t : {0.0, 3.0, 5.2})
        for (double z : {0.0, 0.5, kRt2}) CHECK_FALSE(envelope_section(mode, z, t, kWindow));
}

TEST_CASE("degenerate section at the first tangency") {
    const WaveMode mode = default_mode(0.01);
    const CatastropheTimes c = catastrophe_times(mode);
    const auto s = envelope_section(mode, 0.0, c.t_prime, kWindow);
    REQUIRE(s);
    CHECK(s->degenerate);
    CHECK(s->X1 == s->X2);
    CHECK(s->X1 == doctest::Approx(c.X_prime).epsilon(1e-9));
    CHECK(equal_area_residual(*s, mode) == 0.0);
    // Just after: a tiny but genuine section around the same point.
    const auto after = envelope_section(mode, 0.0, c.t_prime + 1e-3, kWindow);
    REQUIRE(after);
    CHECK(after->X2 - after->X1 > 0.0);
    CHECK(after->X2 - after->X1 < 0.05);
    CHECK(std::abs(0.5 * (after->X1 + after->X2) - c.X_prime) < 1e-3);
}

TEST_CASE("section at t = 6.5 on the lower lid") {
    const WaveMode mode = default_mode(0.01);
    const auto s = envelope_section(mode, 0.0, 6.5, kWindow);
    REQUIRE(s);
    CHECK_FALSE(s->used_fallback);
    const CylindricalSolution cyl(mode);
    const double s1 = cyl.sprime(1, 0, 0, s->X1, 0.0, 6.5);
    const double s2 = cyl.sprime(1, 0, 0, s->X2, 0.0, 6.5);
    CHECK(std::abs(s1 - s2) < 1e-8);
    CHECK(std::abs(s->x_front - s1) < 1e-8);
    CHECK(std::abs((s->S_at_X2 - s->S_at_X1) - s->x_front * (s->X2 - s->X1)) < 1e-8);

    const verify::HullBridge h = verify::hull_bridge(mode, 0.0, 6.5);
    REQUIRE(h.found);
    CHECK(std::abs(periodic_delta(s->X1, h.X1, kPi)) < 1e-5);
    CHECK(std::abs(periodic_delta(s->X2, h.X2, kPi)) < 1e-5);
    // x = S′_X is X plus a periodic part, so it shifts by the period too.
    CHECK(std::abs(periodic_delta(s->x_front, h.slope, kPi)) < 1e-5);
}

TEST_CASE("sections contain the concave region and sit on convex ground") {
    const WaveMode mode = default_mode(0.01);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uz(0.0, kRt2), ut(5.4, 9.3);
    int seen = 0;
    for (int n = 0; n < 60; ++n) {
        const double z = uz(rng), t = ut(rng);
        const auto s = envelope_section(mode, z, t, kWindow);
        if (!s) continue;
        ++seen;
        CHECK(s->X1 < s->X2);
        CHECK(f_field(mode, s->X1 - 1e-6, z, t) > 0.0);
        CHECK(f_field(mode, s->X2 + 1e-6, z, t) > 0.0);
        // One concave region per period: every root in [X1, X1 + π) bounds it.
        const std::vector<double> roots = level_roots(mode, z, t, s->X1);
        CHECK(roots.size() == 2);
        for (double X : roots) CHECK((X > s->X1 && X < s->X2));
        CHECK(std::abs(equal_area_residual(*s, mode)) < 1e-8);
    }
    CHECK(seen > 20);
}

TEST_CASE("equal-area residual detects a wrong endpoint") {
    const WaveMode mode = default_mode(0.01);
    auto s = envelope_section(mode, 0.2, 7.0, kWindow);
    REQUIRE(s);
    CHECK(std::abs(equal_area_residual(*s, mode)) < 1e-8);
    FrontSection moved = *s;
    moved.X2 += 0.01;
    const double f2 = f_field(mode, s->X2, 0.2, 7.0);
    const double r = equal_area_residual(moved, mode);
    CHECK(std::abs(r) > 1e-4);
    // Leading order: δ f(X2) (X2 - X1)/2.
    CHECK(r == doctest::Approx(0.01 * f2 * 0.5 * (s->X2 - s->X1)).epsilon(0.1));
}

TEST_CASE("Newton failure falls back to slope bisection") {
    // A one-iteration budget forces the fallback path.
    const WaveMode mode = default_mode(0.01);
    EnvelopeOptions opts;
    opts.max_iterations = 1;
    const auto fb = envelope_section(mode, 0.0, 7.5, kWindow, opts);
    const auto nw = envelope_section(mode, 0.0, 7.5, kWindow);
    REQUIRE(fb);
    REQUIRE(nw);
    CHECK(fb->used_fallback);
    CHECK_FALSE(nw->used_fallback);
    CHECK(fb->X1 == doctest::Approx(nw->X1).epsilon(1e-10));
    CHECK(fb->X2 == doctest::Approx(nw->X2).epsilon(1e-10));
}

TEST_CASE("envelope needs an X-travelling wave and a full window") {
    const WaveMode oblique = make_mode(default_params(), WaveVector::from_kl(1, 1), 0.01);
    CHECK_THROWS_AS(envelope_section(oblique, 0.0, 7.0, kWindow), ParameterError);
    CHECK_THROWS_AS(envelope_section(default_mode(0.01), 0.0, 7.0, {0.0, 1.0}), ParameterError);
}

TEST_CASE("front surface topology") {
    const WaveMode mode = default_mode(0.01);
    const CatastropheTimes c = catastrophe_times(mode);

    const FrontSurface mid = front_surface(mode, 6.5, 256);
    REQUIRE(mid.spans.size() == 2);
    CHECK(mid.spans[0].first == doctest::Approx(mid.z_grid.front()));
    CHECK(mid.spans[1].second == doctest::Approx(mid.z_grid.back()));
    REQUIRE(mid.tips.size() == 2);
    const SingularCurve locus = singular_locus(mode, 6.5, kWindow);
    REQUIRE(locus.cusps.size() == 2);
    for (double tip : mid.tips) {
        bool matched = false;
        for (const SingularPoint& p : locus.cusps) matched = matched || std::abs(p.z - tip) < 1e-6;
        CHECK(matched);
    }

    const FrontSurface late = front_surface(mode, 8.5, 256);
    REQUIRE(late.spans.size() == 1);
    CHECK(late.spans[0].first == doctest::Approx(late.z_grid.front()));
    CHECK(late.spans[0].second == doctest::Approx(late.z_grid.back()));
    CHECK(late.tips.empty());
    // Continuous in z: neighbouring sections stay close.
    const auto secs = late.sections();
    for (std::size_t i = 1; i < secs.size(); ++i) {
        CHECK(std::abs(secs[i].X1 - secs[i - 1].X1) < 0.05);
        CHECK(std::abs(secs[i].x_front - secs[i - 1].x_front) < 0.05);
    }

    // Just before t″ the tips close in on mid-depth from both sides.
    const FrontSurface meet = front_surface(mode, c.t_double_prime - 1e-4, 512);
    REQUIRE(meet.tips.size() == 2);
    CHECK(meet.tips[0] < 0.5 * kRt2);
    CHECK(meet.tips[1] > 0.5 * kRt2);
    CHECK(meet.tips[1] - meet.tips[0] < 0.02);
    const FrontSurface closer = front_surface(mode, c.t_double_prime - 1e-5, 2048);
    REQUIRE(closer.tips.size() == 2);
    CHECK(closer.tips[1] - closer.tips[0] < 0.5 * (meet.tips[1] - meet.tips[0]));

    CHECK(front_surface(mode, 4.0, 64).sections().empty());
}

TEST_CASE("Rankine-Hugoniot slope and second-order convergence") {
    const WaveMode mode = default_mode(0.01);
    const RankineHugoniotReport coarse = rankine_hugoniot_check(front_surface(mode, 8.5, 256), mode);
    const RankineHugoniotReport fine = rankine_hugoniot_check(front_surface(mode, 8.5, 512), mode);
    CHECK(coarse.max_rel_error < 1e-3);
    CHECK(coarse.rows.size() == 254);
    CHECK(fine.max_rel_error < 0.5 * coarse.max_rel_error);
    CHECK(coarse.max_rel_error / fine.max_rel_error == doctest::Approx(4.0).epsilon(0.1));

    // Two separate fronts: levels around the tips are skipped.
    const RankineHugoniotReport mid = rankine_hugoniot_check(front_surface(mode, 6.5, 256), mode);
    CHECK(mid.rows.size() < 254);
    CHECK_THROWS_AS(rankine_hugoniot_check(front_surface(mode, 4.0, 16), mode), ParameterError);
}

TEST_CASE("Margules form of the jump condition") {
    // θ = -S_z and X = x + v_g, so -[[Z]]/[[X]] = -[[θ]]/[[x + v_g]].
    const WaveMode mode = default_mode(0.01);
    const auto s = envelope_section(mode, 0.4, 8.0, kWindow);
    REQUIRE(s);
    const auto at = [&](double X) {
        const JetBundle j = eval_jet(mode, X, 0.0, 0.4, 8.0);
        const double theta = -j.S_z;
        const double x = j.S_X;
        const double vg = X - j.S_X;
        return std::pair{theta, x + vg};
    };
    const auto [th1, a1] = at(s->X1);
    const auto [th2, a2] = at(s->X2);
    const CylindricalSolution cyl(mode);
    const double rh = (cyl.sprime(0, 1, 0, s->X2, 0.4, 8.0) - cyl.sprime(0, 1, 0, s->X1, 0.4, 8.0)) /
                      (s->X2 - s->X1);
    CHECK(-(th2 - th1) / (a2 - a1) == doctest::Approx(rh).epsilon(1e-12));
}
