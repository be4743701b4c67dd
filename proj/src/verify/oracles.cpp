#include "eady/verify/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "eady/numerics.hpp"
#include "eady/wavefield.hpp"

namespace eady::verify {

long double neutral_x_oracle() {
    long double x = 1.2L;
    for (int i = 0; i < 100; ++i) {
        const long double th = std::tanh(x);
        const long double g = x * th - 1.0L;
        const long double dg = th + x * (1.0L - th * th);
        const long double step = g / dg;
        x -= step;
        if (std::fabs(step) < 1e-19L) break;
    }
    return x;
}

namespace {

double period_of(const WaveMode& mode) { return 2.0 * kPi / mode.wavevector.m; }

// f from the second X-derivative of S along the rotated direction, via the
// plain (unrotated) partials: f = c² S_XX + 2cs S_XY + s² S_YY.
double f_plain(const WaveMode& mode, double Xp, double z, double t) {
    const double c = mode.wavevector.k / mode.wavevector.m;
    const double s = mode.wavevector.l / mode.wavevector.m;
    const double X = c * Xp;
    const double Y = s * Xp;
    return c * c * partial(mode, {2, 0, 0, 0}, X, Y, z, t) +
           2.0 * c * s * partial(mode, {1, 1, 0, 0}, X, Y, z, t) +
           s * s * partial(mode, {0, 2, 0, 0}, X, Y, z, t);
}

}  // namespace

GridMinimum brute_min_f(const WaveMode& mode, double t, int nx, int nz) {
    const double P = period_of(mode);
    const double B = mode.params.B();
    GridMinimum best{0.0, 0.0, f_plain(mode, 0.0, 0.0, t)};
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j <= nz; ++j) {
            const double X = P * i / nx;
            const double z = B * j / nz;
            const double v = f_plain(mode, X, z, t);
            if (v < best.f) best = {X, z, v};
        }
    // Zoom: successively finer 21×21 grids around the incumbent.
    double hx = P / nx;
    double hz = B / nz;
    for (int level = 0; level < 12; ++level) {
        const GridMinimum c = best;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) {
                const double X = c.X + hx * i / 10.0;
                const double z = std::clamp(c.z + hz * j / 10.0, 0.0, B);
                const double v = f_plain(mode, X, z, t);
                if (v < best.f) best = {X, z, v};
            }
        hx /= 5.0;
        hz /= 5.0;
    }
    return best;
}

GridMinimum brute_min_f_level(const WaveMode& mode, double z, double t, int nx) {
    const double P = period_of(mode);
    GridMinimum best{0.0, z, f_plain(mode, 0.0, z, t)};
    for (int i = 0; i < nx; ++i) {
        const double X = P * i / nx;
        const double v = f_plain(mode, X, z, t);
        if (v < best.f) best = {X, z, v};
    }
    double h = P / nx;
    for (int level = 0; level < 15; ++level) {
        const GridMinimum c = best;
        for (int i = -10; i <= 10; ++i) {
            const double X = c.X + h * i / 10.0;
            const double v = f_plain(mode, X, z, t);
            if (v < best.f) best = {X, z, v};
        }
        h /= 5.0;
    }
    return best;
}

HullBridge hull_bridge(const WaveMode& mode, double z, double t, int samples) {
    const double P = period_of(mode);
    const auto Sp = [&](double X) { return partial(mode, {0, 0, 0, 0}, X, 0.0, z, t); };

    // Centre of the concave region from discrete second differences.
    const int coarse = 4096;
    const double hc = P / coarse;
    double centre = 0.0;
    double dmin = 0.0;
    for (int i = 0; i < coarse; ++i) {
        const double X = i * hc;
        const double d2 = Sp(X + hc) - 2.0 * Sp(X) + Sp(X - hc);
        if (i == 0 || d2 < dmin) {
            dmin = d2;
            centre = X;
        }
    }
    HullBridge out;
    if (dmin >= 0.0) return out;

    const double lo = centre - 0.5 * P;
    const double h = P / samples;
    const double s_lo = Sp(lo);
    const double s_hi = Sp(lo + P);
    const double chord = (s_hi - s_lo) / P;
    std::vector<std::array<double, 2>> pts(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        const double u = i * h;
        pts[i] = {u, Sp(lo + u) - s_lo - chord * u};
    }

    // Andrew's monotone chain, lower hull only (points are already sorted).
    std::vector<int> hull;
    hull.reserve(1024);
    for (int i = 0; i <= samples; ++i) {
        while (hull.size() >= 2) {
            const auto& a = pts[hull[hull.size() - 2]];
            const auto& b = pts[hull.back()];
            const auto& c = pts[i];
            const double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            if (cross <= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    int best_k = -1;
    int best_gap = 0;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const int gap = hull[k + 1] - hull[k];
        if (gap > best_gap) {
            best_gap = gap;
            best_k = static_cast<int>(k);
        }
    }
    if (best_k < 0 || best_gap < 3) return out;
    const auto& a = pts[hull[best_k]];
    const auto& b = pts[hull[best_k + 1]];
    out.found = true;
    out.X1 = lo + a[0];
    out.X2 = lo + b[0];
    out.slope = (b[1] - a[1]) / (b[0] - a[0]) + chord;
    return out;
}

double slice_curvature_fd(const WaveMode& mode, double X, double z, double t, double h) {
    // Metric f (dX² + q dζ²) with ζ = z: write it as ±e^{2u}(dX² + dζ'²),
    // ζ' = √q z, so K = ∓e^{-2u} Δ' u with u = ½ ln|f|.
    const double q = mode.params.q_g();
    const double sq = std::sqrt(q);
    const auto u = [&](double x, double zp) {
        return 0.5 * std::log(std::abs(f_plain(mode, x, zp / sq, t)));
    };
    const double zp = sq * z;
    const double lap = (u(X + h, zp) - 2.0 * u(X, zp) + u(X - h, zp)) / (h * h) +
                       (u(X, zp + h) - 2.0 * u(X, zp) + u(X, zp - h)) / (h * h);
    const double f = f_plain(mode, X, z, t);
    const double K = -lap / f;  // the sign of f carries the overall sign of the metric
    return 2.0 * K;
}

namespace {

// Exterior algebra on R⁶ with basis (x, y, z, X, Y, Z) = indices 0..5. A form
// is a map from strictly increasing index lists to coefficients.
using Form = std::map<std::vector<int>, double>;

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return 0;
    return sign;
}

Form wedge(const Form& a, const Form& b) {
    Form out;
    for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            const int s = sort_sign(idx);
            if (s != 0) out[idx] += s * ca * cb;
        }
    return out;
}

Form basis_form(std::vector<int> idx, double c) {
    const int s = sort_sign(idx);
    return s == 0 ? Form{} : Form{{idx, s * c}};
}

Form add(Form a, const Form& b) {
    for (const auto& [i, c] : b) a[i] += c;
    return a;
}

// Interior product of the basis vector e_v with a form.
Form interior(int v, const Form& a) {
    Form out;
    for (const auto& [idx, c] : a) {
        for (std::size_t p = 0; p < idx.size(); ++p)
            if (idx[p] == v) {
                std::vector<int> rest = idx;
                rest.erase(rest.begin() + static_cast<long>(p));
                out[rest] += ((p % 2 == 0) ? 1.0 : -1.0) * c;
            }
    }
    return out;
}

double top_coefficient(const Form& a) {
    const auto it = a.find({0, 1, 2, 3, 4, 5});
    return it == a.end() ? 0.0 : it->second;
}

}  // namespace

std::vector<double> lychagin_roubtsov_pairings(double q_g) {
    enum { x = 0, y = 1, z = 2, X = 3, Y = 4, Z = 5 };
    // ω = dX∧dx + dY∧dy + dZ∧dz, α = dX∧dY∧dZ − q_g dx∧dy∧dz.
    const Form omega =
        add(add(basis_form({X, x}, 1.0), basis_form({Y, y}, 1.0)), basis_form({Z, z}, 1.0));
    const Form alpha = add(basis_form({X, Y, Z}, 1.0), basis_form({x, y, z}, -q_g));
    const double vol = top_coefficient(wedge(wedge(omega, omega), omega)) / 6.0;
    std::vector<double> g(36, 0.0);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            g[6 * a + b] =
                top_coefficient(wedge(wedge(interior(a, alpha), interior(b, alpha)), omega)) / vol;
    return g;
}

double lagrangian_w(const WaveMode& mode, double X0, double Y0, double z0, double t0, double dt) {
    // Dual-space dynamics: DX/Dt = u_g = S_Y − Y, DY/Dt = v_g = X − S_X and
    // Z = −S_z conserved. The height follows from Z by Newton in z.
    const double Z = -partial(mode, {0, 0, 1, 0}, X0, Y0, z0, t0);
    const auto height = [&](double X, double Y, double t, double zguess) {
        double zz = zguess;
        for (int i = 0; i < 50; ++i) {
            const double g = -partial(mode, {0, 0, 1, 0}, X, Y, zz, t) - Z;
            const double dg = -partial(mode, {0, 0, 2, 0}, X, Y, zz, t);
            const double step = g / dg;
            zz -= step;
            if (std::abs(step) < 1e-15) break;
        }
        return zz;
    };
    struct State {
        double X, Y, z;
    };
    const auto rhs = [&](double X, double Y, double t, double zguess, double& dX, double& dY,
                         double& zz) {
        zz = height(X, Y, t, zguess);
        dX = partial(mode, {0, 1, 0, 0}, X, Y, zz, t) - Y;
        dY = X - partial(mode, {1, 0, 0, 0}, X, Y, zz, t);
    };
    const auto advance = [&](double h) {
        State s{X0, Y0, z0};
        double t = t0;
        const int steps = 4;
        const double k = h / steps;
        for (int n = 0; n < steps; ++n) {
            double a1, b1, a2, b2, a3, b3, a4, b4, zz;
            rhs(s.X, s.Y, t, s.z, a1, b1, zz);
            rhs(s.X + 0.5 * k * a1, s.Y + 0.5 * k * b1, t + 0.5 * k, zz, a2, b2, zz);
            rhs(s.X + 0.5 * k * a2, s.Y + 0.5 * k * b2, t + 0.5 * k, zz, a3, b3, zz);
            rhs(s.X + k * a3, s.Y + k * b3, t + k, zz, a4, b4, zz);
            s.X += k / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            s.Y += k / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
            t += k;
            s.z = height(s.X, s.Y, t, zz);
        }
        return s.z;
    };
    return (advance(dt) - advance(-dt)) / (2.0 * dt);
}

}  // namespace eady::verify
