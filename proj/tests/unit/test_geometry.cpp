#include <doctest.h>

#include <cmath>
#include <random>

#include "eady/geometry.hpp"
#include "eady/numerics.hpp"
#include "eady/singularity.hpp"
#include "eady/verify/oracles.hpp"
#include "eady/wavefield.hpp"

using namespace eady;

namespace {

const double kRt2 = std::sqrt(2.0);

WaveMode oblique_mode() {
    // k = l with |k| = 2.
    return make_mode(default_params(), WaveVector::from_polar(2.0, 0.25 * kPi), 0.01);
}

}  // namespace

TEST_CASE("ambient metric pairs conjugate coordinates") {
    const AmbientMetric g = ambient_metric(0.5);
    CHECK(g.pair_coefficient() == doctest::Approx(1.0));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const bool conjugate = std::abs(a - b) == 3;
            CHECK(g.G(a, b) == doctest::Approx(conjugate ? 0.5 : 0.0));
        }
    Eigen::SelfAdjointEigenSolver<Matrix6> es(g.G);
    int positive = 0;
    for (int i = 0; i < 6; ++i) positive += es.eigenvalues()(i) > 0.0;
    CHECK(positive == 3);
    CHECK_THROWS_AS(ambient_metric(0.0), ParameterError);
}

TEST_CASE("ambient metric agrees with the exterior-algebra definition") {
    for (double q : {0.5, 1.0, 3.0}) {
        const AmbientMetric g = ambient_metric(q);
        const std::vector<double> oracle = verify::lychagin_roubtsov_pairings(q);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) CHECK(g.G(a, b) == doctest::Approx(oracle[6 * a + b]));
    }
}

TEST_CASE("pull-back of the basic state is flat and Riemannian") {
    const WaveMode mode = default_mode(0.0);
    const double q = mode.params.q_g();
    const PullbackMetric h = pullback(mode, 0.7, -0.2, 0.9, 3.0);
    CHECK(h.h_XX == doctest::Approx(2 * q));
    CHECK(h.h_XY == doctest::Approx(0.0));
    CHECK(h.h_YY == doctest::Approx(2 * q));
    CHECK(h.h_zz == doctest::Approx(2 * q * q));
    for (double X : {0.0, 1.0, 2.0})
        for (double z : {0.0, 0.7, kRt2}) {
            const CurvatureSample s = scalar_curvature(mode, X, z, 3.0);
            REQUIRE(s.Sc);
            CHECK(*s.Sc == 0.0);
            CHECK(s.signature == Signature::riemannian);
        }
}

TEST_CASE("closed-form pull-back equals the embedding pull-back") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> X(0.0, 2.0 * kPi), Y(-1.0, 1.0), z(0.0, kRt2), t(0.0, 9.0);
    for (const WaveMode& mode : {default_mode(0.01), oblique_mode()})
        for (int i = 0; i < 200; ++i) {
            const double Xv = X(rng), Yv = Y(rng), zv = z(rng), tv = t(rng);
            const Eigen::Matrix3d direct = pullback_direct(mode, Xv, Yv, zv, tv);
            const Eigen::Matrix3d closed = pullback(mode, Xv, Yv, zv, tv).matrix();
            CHECK((direct - closed).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("cylindrical pull-back has the product form") {
    const WaveMode mode = default_mode(0.01);
    const double q = mode.params.q_g();
    const double expected = std::pow(2 * q, 3) * q;
    int checked = 0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j <= 32; ++j) {
            const double X = kPi + kPi * i / 64;
            const double z = kRt2 * j / 32;
            const PullbackMetric h = pullback(mode, X, 0.4, z, 6.0);
            const double f = f_field(mode, X, z, 6.0);
            CHECK(h.h_YY == doctest::Approx(2 * q).epsilon(1e-14));
            CHECK(std::abs(h.h_XY) < 1e-15);
            CHECK(h.h_zz == doctest::Approx(2 * q * q * f).epsilon(1e-10));
            // Buoyancy: q f = -S_zz.
            CHECK(std::abs(q * f + partial(mode, {0, 0, 2, 0}, X, 0.4, z, 6.0)) < 1e-10);
            if (std::abs(f) > 1e-3) {
                CHECK(std::abs(h.det() / (f * f) - expected) < 1e-10 * expected);
                ++checked;
            }
        }
    CHECK(checked > 1500);
}

TEST_CASE("metric degenerates on the singular set") {
    const WaveMode mode = default_mode(0.01);
    const std::vector<double> roots = level_roots(mode, 0.5, 8.5, kPi);
    REQUIRE(!roots.empty());
    for (double X : roots) {
        const PullbackMetric h = pullback(mode, X, 0.0, 0.5, 8.5);
        CHECK(std::abs(h.det()) < 1e-12);
        CHECK(scalar_curvature(mode, X, 0.5, 8.5).signature == Signature::degenerate);
        CHECK_FALSE(scalar_curvature(mode, X, 0.5, 8.5).Sc);
    }
}

TEST_CASE("reduced and unreduced curvature formulas agree") {
    const WaveMode mode = default_mode(0.01);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> X(0.0, 2.0 * kPi), z(0.0, kRt2), t(0.0, 10.0);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const double Xv = X(rng), zv = z(rng), tv = t(rng);
        const CurvatureSample s = scalar_curvature(mode, Xv, zv, tv);
        CHECK(std::abs(s.harmonic_residual) < 1e-10);
        if (std::abs(s.f) <= 1e-3) continue;
        REQUIRE(s.Sc);
        const double full = scalar_curvature_unreduced(mode, Xv, zv, tv);
        CHECK(std::abs(full - *s.Sc) < 1e-9);
        ++checked;
    }
    CHECK(checked > 1900);
}

TEST_CASE("sign of the curvature follows the signature") {
    const WaveMode mode = default_mode(0.01);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> X(kPi, 2.0 * kPi), z(0.0, kRt2), t(6.0, 10.0);
    int negative = 0, used = 0;
    for (int i = 0; i < 10000; ++i) {
        const CurvatureSample s = scalar_curvature(mode, X(rng), z(rng), t(rng));
        if (std::abs(s.f) <= 1e-6 || std::sqrt(s.numerator) <= 1e-6) continue;
        REQUIRE(s.Sc);
        CHECK((*s.Sc > 0.0) == (s.f > 0.0));
        CHECK((s.signature == Signature::riemannian) == (s.f > 0.0));
        negative += s.f < 0.0;
        ++used;
    }
    CHECK(used > 9900);
    CHECK(negative > 100);
}

TEST_CASE("closed form matches the finite-difference slice curvature") {
    const WaveMode mode = default_mode(0.01);
    for (double t : {3.0, 6.0, 8.5})
        for (double X : {3.5, 4.2, 5.0, 6.0})
            for (double z : {0.3, 0.7, 1.1}) {
                const CurvatureSample s = scalar_curvature(mode, X, z, t);
                if (std::abs(s.f) < 0.05) continue;
                const double fd = verify::slice_curvature_fd(mode, X, z, t, 2e-4);
                CHECK(*s.Sc == doctest::Approx(fd).epsilon(1e-4).scale(1e-2));
            }
}

TEST_CASE("curvature blows up as f^-3 at a generic fold") {
    const WaveMode mode = default_mode(0.01);
    const double z = 0.5 * kRt2;
    const std::vector<double> roots = level_roots(mode, z, 8.5, kPi);
    REQUIRE(roots.size() >= 2u);
    for (int side : {+1, -1}) {
        const double slope = fold_blowup_slope(mode, roots.front(), z, 8.5, 1e-6, 1e-4, side);
        CHECK(slope == doctest::Approx(-3.0).epsilon(0.05 / 3.0));
    }
}

TEST_CASE("curvature vanishes at the higher-order point") {
    const WaveMode mode = default_mode(0.01);
    const CatastropheTimes c = catastrophe_times(mode);
    // Along the mid-depth saddle of f the numerator is identically zero while
    // f tends to zero: Sc stays at 0 up to t″.
    for (double dt : {1e-1, 1e-2, 1e-3}) {
        const double t = c.t_double_prime - dt;
        const double z = 0.5 * kRt2;
        const LevelExtremum m = level_minimum(mode, z, t, kPi);
        const CurvatureSample s = scalar_curvature(mode, m.X, z, t);
        REQUIRE(s.Sc);
        CHECK(std::abs(*s.Sc) < 1e-12 / std::pow(std::abs(s.f), 3));
        CHECK(s.numerator < 1e-20);
    }
}

TEST_CASE("surface maximum of the curvature grows towards the first cusp") {
    const WaveMode mode = default_mode(0.01);
    double last = 0.0;
    for (double t : {3.0, 4.0, 5.0}) {
        const CurvatureMaximum m = level_curvature_maximum(mode, 0.0, t);
        REQUIRE(m.found);
        CHECK(m.Sc > last);
        last = m.Sc;
    }
}

TEST_CASE("curvature field: guard band, maxima and the positive region") {
    const WaveMode mode = default_mode(0.01);
    const CurvatureField field = curvature_field(mode, 6.0, {128, 48});
    REQUIRE(field.samples.size() == 128u * 48u);
    REQUIRE(field.maxima.size() == 48u);
    for (const auto& s : field.samples)
        if (std::abs(s.f) <= kCurvatureGuard) CHECK_FALSE(s.Sc);
    // Where Sc changes sign between neighbours, so does f.
    for (int j = 0; j < 48; ++j)
        for (int i = 0; i + 1 < 128; ++i) {
            const auto& a = field.samples[j * 128 + i];
            const auto& b = field.samples[j * 128 + i + 1];
            if (a.Sc && b.Sc && (*a.Sc > 0.0) != (*b.Sc > 0.0)) CHECK((a.f > 0.0) != (b.f > 0.0));
        }
    for (const auto& m : field.maxima) CHECK(m.found);
}

TEST_CASE("rotated frame: identity for l = 0") {
    const WaveMode mode = default_mode(0.01);
    for (double X : {3.3, 4.4, 5.5}) {
        const CurvatureSample a = scalar_curvature(mode, X, 0.4, 6.5);
        const CurvatureSample b = rotated_curvature(mode, X, 0.4, 6.5);
        CHECK(a.f == doctest::Approx(b.f).epsilon(1e-13));
        CHECK(*a.Sc == doctest::Approx(*b.Sc).epsilon(1e-10));
    }
}

TEST_CASE("rotated frame: oblique wave") {
    const WaveMode mode = oblique_mode();
    CHECK(mode.wavevector.k == doctest::Approx(mode.wavevector.l));
    CHECK(mode.wavevector.m == doctest::Approx(2.0));
    double worst_cs = 0.0, worst_metric = 0.0;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j <= 12; ++j)
            for (double Yp : {-0.6, 0.0, 0.9}) {
                const double Xp = 2.0 * kPi * i / 24;
                const double z = kRt2 * j / 12;
                const double t = 6.0;
                worst_cs = std::max(worst_cs, std::abs(rotated_cs_residual(mode, Xp, Yp, z, t)));
                const auto [X, Y] = unrotate_frame(mode.wavevector, Xp, Yp);
                const Eigen::Matrix3d direct = to_rotated_frame(mode.wavevector, pullback(mode, X, Y, z, t).matrix());
                const Eigen::Matrix3d product = product_form_pullback(mode, Xp, z, t).matrix();
                const Eigen::Matrix3d rotated = rotated_pullback(mode, Xp, Yp, z, t).matrix();
                worst_metric = std::max(worst_metric, (direct - product).cwiseAbs().maxCoeff());
                CHECK((rotated - product).cwiseAbs().maxCoeff() < 1e-10);
            }
    CHECK(worst_cs < 1e-10);
    CHECK(worst_metric < 1e-10);
    // The ambient metric keeps its pairing structure in the rotated basis.
    const AmbientMetric g = ambient_metric_rotated(0.5, mode.wavevector);
    const double c = std::cos(0.25 * kPi);
    CHECK(g.G(0, 3) == doctest::Approx(0.5 * c));
    CHECK(g.G(0, 4) == doctest::Approx(-0.5 * c));
    CHECK(g.G(1, 3) == doctest::Approx(0.5 * c));
    CHECK(g.G(1, 4) == doctest::Approx(0.5 * c));
    CHECK(g.G(2, 5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(scalar_curvature(mode, 1.0, 0.3, 6.0), ParameterError);
}
