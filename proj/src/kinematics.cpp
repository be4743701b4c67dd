#include "eady/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eady/numerics.hpp"
#include "eady/wavefield.hpp"

namespace eady {

ObservationWindow ObservationWindow::anchored_at_first_cusp(const WaveMode& mode) {
    const CatastropheTimes ct = catastrophe_times(mode);
    ObservationWindow w;
    w.X0 = ct.X_prime;
    w.t0 = ct.t_prime;
    w.half_width = 0.5 * kPi;
    return w;
}

namespace {

// Front interval at (z, t), or nullopt when the level is single-valued.
std::optional<FrontSection> level_front(const WaveMode& mode, double z, double t, double lo) {
    const double P = mode_period(mode);
    return envelope_section(mode, z, t, {lo, lo + P});
}

bool inside_front(const std::optional<FrontSection>& s, double X, double P) {
    if (!s || s->degenerate) return false;
    const double d = wrap_to(X, s->X1, P) - s->X1;
    return d > 0.0 && d < s->jump_X();
}

}  // namespace

PhaseSample project(const WaveMode& mode, double X, double Y, double z, double t) {
    const JetBundle j = eval_jet(mode, X, Y, z, t);
    PhaseSample p;
    p.X = X;
    p.Y = Y;
    p.z = z;
    p.x = j.S_X;
    p.y = j.S_Y;
    p.Z = -j.S_z;
    p.u_g = j.S_Y - Y;
    p.v_g = X - j.S_X;
    if (mode.wavevector.l == 0.0) {
        const double P = mode_period(mode);
        p.regular = !inside_front(level_front(mode, z, t, X - 0.5 * P), X, P);
    }
    return p;
}

double projection_jacobian(const WaveMode& mode, double X, double Y, double z, double t) {
    const JetBundle j = eval_jet(mode, X, Y, z, t);
    return j.S_XX * j.S_YY - j.S_XY * j.S_XY;
}

std::vector<PSample> multivalued_P(const WaveMode& mode, const std::vector<double>& X_grid,
                                   const std::vector<double>& z_grid, double Y, double t) {
    std::vector<PSample> out;
    out.reserve(X_grid.size() * z_grid.size());
    for (double z : z_grid)
        for (double X : X_grid) {
            const JetBundle j = eval_jet(mode, X, Y, z, t);
            out.push_back({X, z, j.S_X, j.S_Y, X * j.S_X + Y * j.S_Y - j.S});
        }
    return out;
}

namespace {

double w_from_jet(const JetBundle& j, double X, double Y, double tol) {
    if (!(std::abs(j.S_zz) > tol)) {
        std::ostringstream msg;
        msg << "vertical_velocity: degenerate stratification, |S_zz| = " << std::abs(j.S_zz);
        throw NumericalError(msg.str());
    }
    const double u_g = j.S_Y - Y;
    const double v_g = X - j.S_X;
    return -(j.S_zt + u_g * j.S_Xz + v_g * j.S_Yz) / j.S_zz;
}

Velocity velocity_from_jet(const JetBundle& j, double X, double Y, double tol) {
    const double w = w_from_jet(j, X, Y, tol);
    const double u_g = j.S_Y - Y;
    const double v_g = X - j.S_X;
    return {j.S_Xt + u_g * j.S_XX + v_g * j.S_XY + w * j.S_Xz,
            j.S_Yt + u_g * j.S_XY + v_g * j.S_YY + w * j.S_Yz, w};
}

}  // namespace

double vertical_velocity(const WaveMode& mode, double X, double Y, double z, double t, double tol) {
    return w_from_jet(eval_jet(mode, X, Y, z, t), X, Y, tol);
}

Velocity full_velocity(const WaveMode& mode, double X, double Y, double z, double t, double tol) {
    return velocity_from_jet(eval_jet(mode, X, Y, z, t), X, Y, tol);
}

namespace {

// Y with S_Y(X, Y, z, t) = y. S_YY = 1 + O(η), so Newton from the basic
// state converges in a few steps.
double solve_Y(const WaveMode& mode, double X, double y, double z, double t) {
    double Y = y - mode.params.F() * z;
    for (int i = 0; i < 50; ++i) {
        const double g = partial(mode, {0, 1, 0, 0}, X, Y, z, t) - y;
        const double dg = partial(mode, {0, 2, 0, 0}, X, Y, z, t);
        const double step = g / dg;
        Y -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(Y))) return Y;
    }
    throw NumericalError("velocity_snapshot: S_Y = y did not converge");
}

}  // namespace

std::vector<VelocitySample> velocity_snapshot(const WaveMode& mode, double t,
                                              const ObservationWindow& window, double y_slice,
                                              const SnapshotGrid& grid) {
    if (grid.nx < 2 || grid.nz < 2) throw ParameterError("velocity_snapshot: grid too small");
    const double P = mode_period(mode);
    const double B = mode.params.B();
    const bool cylindrical = mode.wavevector.l == 0.0;

    // Read-only per-level front table, built before any sampling.
    std::vector<std::optional<FrontSection>> fronts(grid.nz);
    std::vector<double> zs(grid.nz);
    for (int j = 0; j < grid.nz; ++j) {
        zs[j] = B * j / (grid.nz - 1);
        if (cylindrical) fronts[j] = level_front(mode, zs[j], t, window.lo(t));
    }

    std::vector<VelocitySample> out;
    out.reserve(static_cast<std::size_t>(grid.nx) * grid.nz);
    for (int j = 0; j < grid.nz; ++j) {
        const double z = zs[j];
        for (int i = 0; i < grid.nx; ++i) {
            const double X = window.lo(t) + (window.hi(t) - window.lo(t)) * i / (grid.nx - 1);
            const bool regular = !inside_front(fronts[j], X, P);
            if (!regular && !grid.keep_irregular) continue;
            const double Y = solve_Y(mode, X, y_slice, z, t);
            const JetBundle jet = eval_jet(mode, X, Y, z, t);
            if (!(std::abs(jet.S_zz) > kStratificationTol)) continue;
            const Velocity v = velocity_from_jet(jet, X, Y, kStratificationTol);
            const double Pgeo = X * jet.S_X + Y * jet.S_Y - jet.S;
            out.push_back({X, Y, z, jet.S_X, v.u, v.w,
                           Pgeo - 0.5 * jet.S_X * jet.S_X - 0.5 * jet.S_Y * jet.S_Y, regular});
        }
    }
    return out;
}

std::vector<double> preimages(const WaveMode& mode, double x, double z, double t,
                              bool regular_only) {
    const CylindricalSolution cyl(mode);
    const double P = mode_period(mode);
    const auto g = [&](double X) { return cyl.sprime(1, 0, 0, X, z, t) - x; };

    // |S′_X - X| is periodic; its maximum bounds where roots can lie.
    const int n = 512;
    double amp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double X = P * i / n;
        amp = std::max(amp, std::abs(cyl.sprime(1, 0, 0, X, z, t) - X));
    }
    amp = 1.01 * amp + P / n;

    const double lo = x - amp;
    const int steps = static_cast<int>(std::ceil(2.0 * amp / P * n)) + 1;
    const double h = 2.0 * amp / steps;
    std::vector<double> roots;
    double a = lo;
    double ga = g(a);
    for (int i = 1; i <= steps; ++i) {
        const double b = lo + h * i;
        const double gb = g(b);
        if (ga == 0.0) roots.push_back(a);
        else if ((ga < 0.0) != (gb < 0.0)) {
            const auto fdf = [&](double X, double& v, double& d) {
                v = g(X);
                d = cyl.sprime(2, 0, 0, X, z, t);
            };
            roots.push_back(safeguarded_newton(fdf, a, b, 1e-15 * std::max(1.0, std::abs(x))).x);
        }
        a = b;
        ga = gb;
    }
    if (!regular_only || roots.empty()) return roots;

    const std::optional<FrontSection> s = level_front(mode, z, t, roots.front() - 0.5 * P);
    std::vector<double> kept;
    for (double X : roots)
        if (!inside_front(s, X, P)) kept.push_back(X);
    return kept;
}

Velocity velocity_at_physical(const WaveMode& mode, double x, double y, double z, double t) {
    const std::vector<double> X = preimages(mode, x, z, t, true);
    if (X.size() != 1) {
        std::ostringstream msg;
        msg << "velocity_at_physical: " << X.size() << " regular preimages at x = " << x
            << ", z = " << z;
        throw NumericalError(msg.str());
    }
    const double Y = solve_Y(mode, X.front(), y, z, t);
    return full_velocity(mode, X.front(), Y, z, t);
}

FrontLimits front_limits(const WaveMode& mode, const FrontSection& section, double delta) {
    const auto pick = [&](double x, double target) {
        const std::vector<double> X = preimages(mode, x, section.z, section.t, true);
        if (X.empty()) throw NumericalError("front_limits: no regular preimage");
        return *std::min_element(X.begin(), X.end(), [&](double a, double b) {
            return std::abs(a - target) < std::abs(b - target);
        });
    };
    const double d = delta * std::max(1.0, std::abs(section.x_front));
    FrontLimits L;
    L.X_left = pick(section.x_front - d, section.X1);
    L.X_right = pick(section.x_front + d, section.X2);
    L.Z_left = -partial(mode, {0, 0, 1, 0}, L.X_left, 0.0, section.z, section.t);
    L.Z_right = -partial(mode, {0, 0, 1, 0}, L.X_right, 0.0, section.z, section.t);
    return L;
}

double max_speed_near(const WaveMode& mode, double t, double Xc, double zc, double r,
                      int n_radial, int n_angular) {
    if (!(r > 0.0) || n_radial < 2 || n_angular < 1)
        throw ParameterError("max_speed_near: need r > 0 and a nontrivial polar grid");
    const double P = mode_period(mode);
    double best = 0.0;
    for (int a = 0; a < n_radial; ++a) {
        const double rr = r * (1.0 + static_cast<double>(a) / (n_radial - 1));
        for (int b = 0; b < n_angular; ++b) {
            const double th = 2.0 * kPi * b / n_angular;
            const double X = Xc + rr * std::cos(th);
            const double z = zc + rr * std::sin(th);
            if (z < 0.0 || z > mode.params.B()) continue;
            if (mode.wavevector.l == 0.0 &&
                inside_front(level_front(mode, z, t, X - 0.5 * P), X, P))
                continue;
            const JetBundle jet = eval_jet(mode, X, 0.0, z, t);
            if (!(std::abs(jet.S_zz) > kStratificationTol)) continue;
            best = std::max(best, std::abs(velocity_from_jet(jet, X, 0.0, kStratificationTol).u));
        }
    }
    return best;
}

}  // namespace eady
