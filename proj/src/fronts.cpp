#include "eady/fronts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eady/numerics.hpp"
#include "eady/wavefield.hpp"

namespace eady {

std::vector<FrontSection> FrontSurface::sections() const {
    std::vector<FrontSection> out;
    for (const auto& s : levels)
        if (s) out.push_back(*s);
    return out;
}

namespace {

struct LevelFunctions {
    const CylindricalSolution& cyl;
    double z;
    double t;

    double S(double X) const { return cyl.sprime(0, 0, 0, X, z, t); }
    double S_X(double X) const { return cyl.sprime(1, 0, 0, X, z, t); }
    double f(double X) const { return cyl.sprime(2, 0, 0, X, z, t); }
};

struct TangencyResidual {
    double r1 = 0.0;  // slope mismatch
    double r2 = 0.0;  // secant slope minus mean tangent slope
    double norm() const { return std::hypot(r1, r2); }
};

TangencyResidual tangency_residual(const LevelFunctions& L, double X1, double X2) {
    const double s1 = L.S_X(X1);
    const double s2 = L.S_X(X2);
    return {s2 - s1, (L.S(X2) - L.S(X1)) / (X2 - X1) - 0.5 * (s1 + s2)};
}

// Root of S′_X = s on a bracket where S′_X is increasing.
double slope_preimage(const LevelFunctions& L, double s, double lo, double hi) {
    const auto fdf = [&](double X, double& v, double& d) {
        v = L.S_X(X) - s;
        d = L.f(X);
    };
    return safeguarded_newton(fdf, lo, hi, 1e-15).x;
}

FrontSection make_section(const LevelFunctions& L, double X1, double X2) {
    FrontSection s;
    s.z = L.z;
    s.t = L.t;
    s.X1 = X1;
    s.X2 = X2;
    s.x_front = 0.5 * (L.S_X(X1) + L.S_X(X2));
    s.S_at_X1 = L.S(X1);
    s.S_at_X2 = L.S(X2);
    return s;
}

}  // namespace

std::optional<FrontSection> envelope_section(const WaveMode& mode, double z, double t,
                                             XWindow window, const EnvelopeOptions& options) {
    const CylindricalSolution cyl(mode);
    const double P = mode_period(mode);
    if (!(window.hi - window.lo >= P * (1.0 - 1e-12)))
        throw ParameterError("envelope_section: window must span one period");
    const LevelFunctions L{cyl, z, t};

    const LevelExtremum minimum = level_minimum(mode, z, t, window.lo);
    if (minimum.f > options.tangency_tol) return std::nullopt;
    const double c = minimum.X;
    if (minimum.f >= -options.tangency_tol) {
        FrontSection s = make_section(L, c, c);
        s.x_front = L.S_X(c);
        s.degenerate = true;
        return s;
    }

    // Inflection points bounding {f < 0} around the centre.
    double rL = c, rR = c;
    {
        const std::vector<double> roots = level_roots(mode, z, t, c - 0.5 * P);
        for (double r : roots) {
            if (r < c && (rL == c || r > rL)) rL = r;
            if (r > c && (rR == c || r < rR)) rR = r;
        }
        if (!(rL < c && c < rR)) {
            std::ostringstream msg;
            msg << "envelope_section: could not bracket the concave region at z = " << z
                << ", t = " << t;
            throw NumericalError(msg.str());
        }
    }

    // For small concave regions the tangency half-width is √3 times the
    // inflection half-width.
    const double reach = 0.49 * P;
    double X1 = std::max(c - std::sqrt(3.0) * (c - rL), c - reach);
    double X2 = std::min(c + std::sqrt(3.0) * (rR - c), c + reach);
    const double scale = std::max(1.0, std::abs(L.S_X(c)));

    TangencyResidual r = tangency_residual(L, X1, X2);
    int it = 0;
    bool converged = false;
    for (; it < options.max_iterations; ++it) {
        if (r.norm() <= options.residual_tol * scale) {
            converged = true;
            break;
        }
        const double D = X2 - X1;
        const double s1 = L.S_X(X1), s2 = L.S_X(X2);
        const double f1 = L.f(X1), f2 = L.f(X2);
        const double secant = (L.S(X2) - L.S(X1)) / D;
        const double a11 = -f1, a12 = f2;
        const double a21 = (secant - s1) / D - 0.5 * f1;
        const double a22 = (s2 - secant) / D - 0.5 * f2;
        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double d1 = -(r.r1 * a22 - r.r2 * a12) / det;
        const double d2 = -(a11 * r.r2 - a21 * r.r1) / det;
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            const double n1 = X1 + lambda * d1;
            const double n2 = X2 + lambda * d2;
            if (n1 < rL && n2 > rR && n1 > c - reach && n2 < c + reach) {
                const TangencyResidual rn = tangency_residual(L, n1, n2);
                if (rn.norm() < r.norm()) {
                    X1 = n1;
                    X2 = n2;
                    r = rn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            converged = r.norm() <= 1e3 * options.residual_tol * scale;
            break;
        }
    }

    const bool valid = converged && X1 < rL && X2 > rR && L.f(X1) > 0.0 && L.f(X2) > 0.0;
    FrontSection section;
    if (valid) {
        section = make_section(L, X1, X2);
    } else {
        // Bisection on the tangent slope s: the left and right preimages of s
        // on the convex branches give E(s) = S′(xR) − S′(xL) − s(xR − xL),
        // which is monotone on (S′_X(rR), S′_X(rL)).
        const double s_min = L.S_X(rR);
        const double s_max = L.S_X(rL);
        const auto ends = [&](double s) {
            return std::pair{slope_preimage(L, s, rR - P, rL), slope_preimage(L, s, rR, rL + P)};
        };
        const auto E = [&](double s) {
            const auto [xl, xr] = ends(s);
            return L.S(xr) - L.S(xl) - s * (xr - xl);
        };
        const double pad = 1e-12 * (s_max - s_min);
        try {
            const RootResult root = bisect(E, s_min + pad, s_max - pad, 0.0, 1e-15 * scale);
            const auto [xl, xr] = ends(root.x);
            section = make_section(L, xl, xr);
            it += root.iterations;
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << "envelope_section: no convergence at z = " << z << ", t = " << t
                << " (Newton seeds [" << c - std::sqrt(3.0) * (c - rL) << ", "
                << c + std::sqrt(3.0) * (rR - c) << "], slope bracket [" << s_min << ", "
                << s_max << "]): " << e.what();
            throw NumericalError(msg.str());
        }
        section.used_fallback = true;
    }
    section.iterations = it;
    section.degenerate = section.jump_X() < options.degenerate_width;
    return section;
}

double equal_area_residual(const FrontSection& section, const WaveMode& mode) {
    if (section.X2 == section.X1) return 0.0;
    const CylindricalSolution cyl(mode);
    const auto integrand = [&](double X) { return X * cyl.sprime(2, 0, 0, X, section.z, section.t); };
    const double curve = adaptive_simpson(integrand, section.X1, section.X2, 1e-12);
    const double x1 = cyl.sprime(1, 0, 0, section.X1, section.z, section.t);
    const double x2 = cyl.sprime(1, 0, 0, section.X2, section.z, section.t);
    const double chord = (x1 - x2) * 0.5 * (section.X1 + section.X2);
    return curve + chord;
}

std::vector<double> interior_z_grid(const EadyParams& p, int n) {
    if (n < 1) throw ParameterError("interior_z_grid: need at least one level");
    std::vector<double> z(n);
    for (int j = 0; j < n; ++j) z[j] = p.B() * (j + 1) / (n + 1);
    return z;
}

FrontSurface front_surface(const WaveMode& mode, double t, const std::vector<double>& z_grid,
                           double X_origin, const EnvelopeOptions& options) {
    const double P = mode_period(mode);
    FrontSurface surf;
    surf.t = t;
    surf.z_grid = z_grid;
    surf.levels.resize(z_grid.size());
    std::vector<double> centre(z_grid.size());
    double origin = X_origin;
    for (std::size_t j = 0; j < z_grid.size(); ++j) {
        centre[j] = level_minimum(mode, z_grid[j], t, origin).X;
        const double lo = centre[j] - 0.5 * P;
        surf.levels[j] = envelope_section(mode, z_grid[j], t, {lo, lo + P}, options);
        origin = lo;
    }

    std::size_t j = 0;
    while (j < z_grid.size()) {
        if (!surf.levels[j]) {
            ++j;
            continue;
        }
        std::size_t k = j;
        while (k + 1 < z_grid.size() && surf.levels[k + 1]) ++k;
        surf.spans.emplace_back(z_grid[j], z_grid[k]);
        j = k + 1;
    }

    for (std::size_t i = 0; i + 1 < z_grid.size(); ++i) {
        if (surf.levels[i].has_value() == surf.levels[i + 1].has_value()) continue;
        const double lo = centre[i] - 0.5 * P;
        const auto g = [&](double z) { return level_minimum(mode, z, t, lo).f; };
        surf.tips.push_back(bisect(g, z_grid[i], z_grid[i + 1], 0.0, 1e-13).x);
    }
    return surf;
}

FrontSurface front_surface(const WaveMode& mode, double t, int z_levels) {
    return front_surface(mode, t, interior_z_grid(mode.params, z_levels));
}

RankineHugoniotReport rankine_hugoniot_check(const FrontSurface& surface, const WaveMode& mode) {
    const CylindricalSolution cyl(mode);
    RankineHugoniotReport report;
    const auto usable = [&](std::size_t i) {
        return surface.levels[i].has_value() && surface.levels[i]->jump_X() >= 1e-6;
    };
    for (std::size_t i = 1; i + 1 < surface.levels.size(); ++i) {
        if (!usable(i - 1) || !usable(i) || !usable(i + 1)) continue;
        const FrontSection& s = *surface.levels[i];
        RankineHugoniotRow row;
        row.z = s.z;
        row.lhs = (surface.levels[i + 1]->x_front - surface.levels[i - 1]->x_front) /
                  (surface.z_grid[i + 1] - surface.z_grid[i - 1]);
        const double jump_Sz = cyl.sprime(0, 1, 0, s.X2, s.z, s.t) - cyl.sprime(0, 1, 0, s.X1, s.z, s.t);
        row.rhs = jump_Sz / s.jump_X();
        row.rel_error = std::abs(row.lhs - row.rhs) / std::max(std::abs(row.rhs), 1e-300);
        report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
        report.rows.push_back(row);
    }
    if (report.rows.empty())
        throw ParameterError("rankine_hugoniot_check: no run of three consecutive sections");
    return report;
}

}  // namespace eady
