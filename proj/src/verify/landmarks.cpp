#include "eady/verify/landmarks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "eady/fronts.hpp"
#include "eady/geometry.hpp"
#include "eady/kinematics.hpp"
#include "eady/numerics.hpp"
#include "eady/singularity.hpp"
#include "eady/verify/oracles.hpp"
#include "eady/wavefield.hpp"

namespace eady::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

constexpr double kEta = 0.01;
const double kB = std::sqrt(2.0);

CriterionResult growth_rate() {
    CriterionResult r;
    const auto t0 = Clock::now();
    const ComplexFrequency w = solve_omega(WaveVector::from_kl(2.0, 0.0), default_params());
    const double elapsed = seconds_since(t0);
    const double exact = 2.0 / std::sqrt(std::exp(4.0) - 1.0);
    const double err = std::abs(w.im - exact);
    r.passed = err < 1e-12 && elapsed < 1e-3;
    r.detail = "omega_i = " + num(w.im, 16) + ", |err| = " + num(err, 3) + " (< 1e-12), " +
               num(elapsed * 1e3, 3) + " ms (< 1 ms)";
    r.values = {{"omega_i", w.im}, {"exact", exact}, {"abs_error", err}, {"runtime_s", elapsed}};
    return r;
}

CriterionResult dispersion_zero() {
    CriterionResult r;
    const EadyParams p = default_params();
    const double m_star = neutral_wavenumber(p);
    const double oracle =
        2.0 * static_cast<double>(neutral_x_oracle()) / (p.B() * std::sqrt(p.q_g()));
    const double err = std::abs(m_star - oracle);
    r.passed = err < 1e-10 && std::abs(m_star - 2.39936) < 5e-6;
    r.detail = "m* = " + num(m_star, 12) + ", oracle " + num(oracle, 12) + ", |err| = " +
               num(err, 3) + " (< 1e-10)";
    r.values = {{"m_star", m_star}, {"oracle", oracle}, {"abs_error", err}};
    return r;
}

CriterionResult exact_solution() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> uX(0.0, 2.0 * kPi), uY(-2.0, 2.0), uz(0.0, kB),
        ut(0.0, 10.0);
    const auto t0 = Clock::now();
    double cs = 0.0, lid = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double X = uX(rng), Y = uY(rng), z = uz(rng), t = ut(rng);
        cs = std::max(cs, std::abs(cs_residual(mode, X, Y, z, t)));
        lid = std::max(lid, std::abs(lid_residual(mode, X, Y, 0.0, t)));
        lid = std::max(lid, std::abs(lid_residual(mode, X, Y, kB, t)));
    }
    const double elapsed = seconds_since(t0);
    r.passed = cs < 1e-9 && lid < 1e-9 && elapsed < 1.0;
    r.detail = "max CS residual " + num(cs, 3) + ", max lid residual " + num(lid, 3) +
               " (< 1e-9) over 1000 points, " + num(elapsed, 3) + " s (< 1 s)";
    r.values = {{"max_cs_residual", cs}, {"max_lid_residual", lid}, {"runtime_s", elapsed}};
    return r;
}

CriterionResult catastrophe_landmarks() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    const auto t0 = Clock::now();
    const CatastropheTimes c = catastrophe_times(mode);
    const double elapsed = seconds_since(t0);
    const double Xp = wrap_to(c.X_prime, kPi, kPi);
    const double Xpp = wrap_to(c.X_double_prime, kPi, kPi);
    const bool ok = c.t_prime >= 5.25 && c.t_prime <= 5.35 && Xp >= 4.04 && Xp <= 4.14 &&
                    c.t_double_prime >= 7.50 && c.t_double_prime <= 7.65 && Xpp >= 4.88 &&
                    Xpp <= 4.98;
    r.passed = ok && elapsed < 1.0;
    r.detail = "t' = " + num(c.t_prime, 8) + " in [5.25, 5.35], X' = " + num(Xp, 8) +
               " in [4.04, 4.14], t'' = " + num(c.t_double_prime, 8) + " in [7.50, 7.65], X'' = " +
               num(Xpp, 8) + " in [4.88, 4.98], " + num(elapsed, 3) + " s (< 1 s)";
    r.values = {{"t_prime", c.t_prime},      {"X_prime", Xp},    {"t_double_prime", c.t_double_prime},
                {"X_double_prime", Xpp},     {"z_prime", c.z_prime}, {"runtime_s", elapsed}};
    return r;
}

CriterionResult locus_topology() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    const XWindow window{kPi, 2.0 * kPi};
    const SingularCurve a = singular_locus(mode, 4.0, window, {});
    const SingularCurve b = singular_locus(mode, 6.5, window, {});
    const SingularCurve c = singular_locus(mode, 8.5, window, {});
    bool ok = a.topology == LocusTopology::empty && a.arcs.empty();
    ok = ok && b.topology == LocusTopology::two_arcs_with_cusps && b.arcs.size() == 2;
    for (const auto& arc : b.arcs) ok = ok && arc.cusp_count == 1;
    ok = ok && c.topology == LocusTopology::two_fold_arcs && c.arcs.size() == 2 && c.cusps.empty();
    r.passed = ok;
    const std::string ta(to_string(a.topology)), tb(to_string(b.topology)), tc(to_string(c.topology));
    r.detail = "t = 4.0: " + ta + "; t = 6.5: " + tb + " (" + std::to_string(b.cusps.size()) +
               " A3); t = 8.5: " + tc + " (" + std::to_string(c.cusps.size()) + " A3)";
    r.values = {{"t4", ta}, {"t6_5", tb}, {"t8_5", tc}, {"cusps_6_5", b.cusps.size()}};
    return r;
}

CriterionResult envelope_oracle() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    const double P = mode_period(mode);
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> uz(0.0, kB), ut(5.5, 10.0);
    double worst_X = 0.0, worst_area = 0.0;
    int compared = 0, empty_both = 0, mismatched = 0;
    for (int n = 0; n < 50; ++n) {
        const double z = uz(rng), t = ut(rng);
        const auto s = envelope_section(mode, z, t, {kPi, 2.0 * kPi});
        const HullBridge h = hull_bridge(mode, z, t);
        if (!s && !h.found) {
            ++empty_both;
            continue;
        }
        if (!s || !h.found) {
            ++mismatched;
            continue;
        }
        worst_X = std::max({worst_X, std::abs(periodic_delta(s->X1, h.X1, P)),
                            std::abs(periodic_delta(s->X2, h.X2, P))});
        worst_area = std::max(worst_area, std::abs(equal_area_residual(*s, mode)));
        ++compared;
    }
    r.passed = mismatched == 0 && compared > 0 && worst_X < 1e-5 && worst_area < 1e-8;
    r.detail = std::to_string(compared) + " sections vs hull oracle: max |dX| = " + num(worst_X, 3) +
               " (< 1e-5), max equal-area residual " + num(worst_area, 3) + " (< 1e-8); " +
               std::to_string(empty_both) + " single-valued levels agreed, " +
               std::to_string(mismatched) + " disagreements";
    r.values = {{"compared", compared}, {"max_dX", worst_X}, {"max_equal_area", worst_area},
                {"empty_both", empty_both}, {"mismatched", mismatched}};
    return r;
}

CriterionResult rankine_hugoniot() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    const RankineHugoniotReport coarse = rankine_hugoniot_check(front_surface(mode, 8.5, 256), mode);
    const RankineHugoniotReport fine = rankine_hugoniot_check(front_surface(mode, 8.5, 512), mode);
    const double ratio = fine.max_rel_error / coarse.max_rel_error;
    r.passed = coarse.max_rel_error < 1e-3 && ratio <= 0.5;
    r.detail = "max rel error " + num(coarse.max_rel_error, 4) + " at 256 levels (< 1e-3), " +
               num(fine.max_rel_error, 4) + " at 512 (ratio " + num(ratio, 3) + ", <= 0.5)";
    r.values = {{"rel_error_256", coarse.max_rel_error}, {"rel_error_512", fine.max_rel_error},
                {"ratio", ratio}, {"rows_256", coarse.rows.size()}};
    return r;
}

CriterionResult velocity() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);

    double lid = 0.0;
    for (double z : {0.0, kB})
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j <= 40; ++j) {
                const double X = 2.0 * kPi * i / 64, t = 10.0 * j / 40;
                try {
                    lid = std::max(lid, std::abs(vertical_velocity(mode, X, 0.3, z, t)));
                } catch (const NumericalError&) {
                }
            }

    const WaveMode flat = default_mode(0.0);
    double basic = 0.0;
    for (double z : {0.0, 0.4, 0.9, kB}) {
        const Velocity v = full_velocity(flat, 1.1, -0.3, z, 2.0);
        basic = std::max({basic, std::abs(v.u - flat.params.F() * z), std::abs(v.v), std::abs(v.w)});
    }

    const SingularCurve locus = singular_locus(mode, 6.5, {kPi, 2.0 * kPi}, {});
    std::vector<double> growth;
    bool monotone = !locus.cusps.empty();
    if (monotone) {
        const SingularPoint& tip = locus.cusps.front();
        for (double rad : {0.1, 0.05, 0.025, 0.0125}) {
            growth.push_back(max_speed_near(mode, 6.5, tip.X, tip.z, rad));
            if (growth.size() > 1 && !(growth.back() > growth[growth.size() - 2])) monotone = false;
        }
    }
    const bool unbounded = monotone && growth.back() >= 4.0 * growth.front();

    const ObservationWindow win = ObservationWindow::anchored_at_first_cusp(mode);
    const auto max_of = [&](int n) {
        double m = 0.0;
        for (const auto& v : velocity_snapshot(mode, 8.5, win, 0.0, {2 * n, n, false}))
            m = std::max(m, std::hypot(v.u, v.w));
        return m;
    };
    const double b1 = max_of(64), b2 = max_of(128), b3 = max_of(256);
    const bool bounded = std::isfinite(b3) && std::abs(b2 - b1) < 0.1 * b1 && std::abs(b3 - b2) < 0.1 * b2;

    r.passed = lid < 1e-9 && basic < 1e-12 && unbounded && bounded;
    std::ostringstream d;
    d << "lid |w| " << num(lid, 3) << " (< 1e-9); basic state err " << num(basic, 3)
      << " (< 1e-12); t = 6.5 max|u| near A3 tip:";
    for (double g : growth) d << ' ' << num(g, 4);
    d << (unbounded ? " (increasing)" : " (NOT increasing)") << "; t = 8.5 max|(u,w)| "
      << num(b1, 5) << ", " << num(b2, 5) << ", " << num(b3, 5) << (bounded ? " (bounded)" : " (NOT bounded)");
    r.detail = d.str();
    r.values = {{"lid_w", lid},        {"basic_state_error", basic}, {"tip_growth", growth},
                {"bounded_max", {b1, b2, b3}}};
    return r;
}

CriterionResult curvature() {
    CriterionResult r;
    const WaveMode mode = default_mode(kEta);
    const double q = mode.params.q_g();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uX(0.0, 2.0 * kPi), uz(0.0, kB), ut(0.0, 10.0);

    double harmonic = 0.0, formula = 0.0;
    int sign_bad = 0, sign_used = 0;
    for (int i = 0; i < 10000; ++i) {
        const double X = uX(rng), z = uz(rng), t = ut(rng);
        const CurvatureSample s = scalar_curvature(mode, X, z, t);
        harmonic = std::max(harmonic, std::abs(s.harmonic_residual));
        if (std::abs(s.f) > 1e-3)
            formula = std::max(formula, std::abs(scalar_curvature_unreduced(mode, X, z, t) - *s.Sc));
        if (std::abs(s.f) > 1e-6 && std::sqrt(s.numerator) > 1e-6) {
            ++sign_used;
            if ((*s.Sc > 0.0) != (s.f > 0.0)) ++sign_bad;
        }
    }

    const WaveMode flat = default_mode(0.0);
    double flat_sc = 0.0;
    for (int i = 0; i < 16; ++i)
        for (double z : {0.0, 0.5, kB}) flat_sc = std::max(flat_sc, std::abs(*scalar_curvature(flat, 0.4 * i, z, 5.0).Sc));

    const double zmid = 0.5 * kB;
    const std::vector<double> roots = level_roots(mode, zmid, 8.5, kPi);
    double slope = std::nan("");
    if (!roots.empty()) slope = fold_blowup_slope(mode, roots.front(), zmid, 8.5, 1e-6, 1e-4, +1);

    const double expected_det = std::pow(2.0 * q, 3) * q;
    double det_dev = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j <= 32; ++j) {
            const double X = kPi + kPi * i / 64, z = kB * j / 32;
            const double f = f_field(mode, X, z, 6.0);
            if (std::abs(f) <= 1e-3) continue;
            det_dev = std::max(det_dev, std::abs(pullback(mode, X, 0.0, z, 6.0).det() / (f * f) - expected_det) /
                                            expected_det);
        }

    std::vector<double> maxima;
    bool monotone = true;
    for (double t : {3.0, 4.0, 5.0}) {
        const CurvatureMaximum m = level_curvature_maximum(mode, 0.0, t);
        if (!maxima.empty() && !(m.Sc > maxima.back())) monotone = false;
        maxima.push_back(m.Sc);
    }

    r.passed = harmonic < 1e-10 && formula < 1e-9 && sign_bad == 0 && sign_used > 9900 &&
               flat_sc == 0.0 && std::abs(slope + 3.0) <= 0.05 && det_dev < 1e-10 && monotone;
    std::ostringstream d;
    d << "harmonic residual " << num(harmonic, 3) << " (< 1e-10); reduced vs full " << num(formula, 3)
      << " (< 1e-9); sign link " << sign_used - sign_bad << "/" << sign_used << "; flat Sc "
      << num(flat_sc, 3) << "; fold slope " << num(slope, 6) << " (-3 +- 0.05); det h/f^2 rel dev "
      << num(det_dev, 3) << " (< 1e-10); z = 0 max Sc at t = 3, 4, 5: " << num(maxima[0], 5) << ", "
      << num(maxima[1], 5) << ", " << num(maxima[2], 5) << (monotone ? " (increasing)" : " (NOT increasing)");
    r.detail = d.str();
    r.values = {{"harmonic_residual", harmonic}, {"formula_difference", formula},
                {"sign_mismatches", sign_bad},   {"sign_samples", sign_used},
                {"flat_Sc", flat_sc},            {"fold_slope", slope},
                {"det_deviation", det_dev},      {"surface_maxima", maxima}};
    return r;
}

CriterionResult rotation() {
    CriterionResult r;
    const WaveMode mode = make_mode(default_params(), WaveVector::from_polar(2.0, 0.25 * kPi), kEta);
    double cs = 0.0, metric = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j <= 16; ++j)
            for (double Yp : {-0.8, 0.0, 0.6})
                for (double t : {2.0, 6.0, 9.0}) {
                    const double Xp = 2.0 * kPi * i / 32, z = kB * j / 16;
                    cs = std::max(cs, std::abs(rotated_cs_residual(mode, Xp, Yp, z, t)));
                    const auto [X, Y] = unrotate_frame(mode.wavevector, Xp, Yp);
                    const Eigen::Matrix3d direct =
                        to_rotated_frame(mode.wavevector, pullback(mode, X, Y, z, t).matrix());
                    const Eigen::Matrix3d product = product_form_pullback(mode, Xp, z, t).matrix();
                    metric = std::max(metric, (direct - product).cwiseAbs().maxCoeff());
                }
    r.passed = cs < 1e-10 && metric < 1e-10 &&
               std::abs(mode.wavevector.k - mode.wavevector.l) < 1e-15;
    r.detail = "k = l = " + num(mode.wavevector.k, 8) + ": rotated CS residual " + num(cs, 3) +
               " (< 1e-10), product-form vs rotated direct pull-back " + num(metric, 3) + " (< 1e-10)";
    r.values = {{"cs_residual", cs}, {"metric_difference", metric}};
    return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {"growth_rate", "growth rate of the k = 2 wave", growth_rate},
        {"dispersion_zero", "neutral wavenumber", dispersion_zero},
        {"exact_solution", "exactness of the nonlinear solution", exact_solution},
        {"catastrophe_landmarks", "first and second catastrophe times", catastrophe_landmarks},
        {"locus_topology", "singular-locus topology sequence", locus_topology},
        {"envelope_oracle", "front sections vs convex-hull oracle", envelope_oracle},
        {"rankine_hugoniot", "Rankine-Hugoniot front slope", rankine_hugoniot},
        {"velocity", "velocity field properties", velocity},
        {"curvature", "scalar curvature suite", curvature},
        {"rotation", "rotation covariance of the oblique wave", rotation},
    };
    return list;
}

CriterionResult run_criterion(const Criterion& c) {
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
        r = c.run();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.id = c.id;
    r.title = c.title;
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (const Criterion& c : criteria()) out.push_back(run_criterion(c));
    return out;
}

std::string format_line(const CriterionResult& r) {
    return std::string(r.passed ? "PASS " : "FAIL ") + r.id + ": " + r.title + " | " + r.detail +
           " (" + num(r.seconds * 1e3, 4) + " ms)";
}

nlohmann::json to_json(const CriterionResult& r) {
    return {{"id", r.id},         {"title", r.title},     {"passed", r.passed},
            {"detail", r.detail}, {"seconds", r.seconds}, {"values", r.values}};
}

}  // namespace eady::verify
