#include "eady/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "eady/numerics.hpp"
#include "eady/wavefield.hpp"

namespace eady {

double mode_period(const WaveMode& mode) { return 2.0 * kPi / mode.wavevector.m; }

std::string_view to_string(SingularKind kind) {
    switch (kind) {
        case SingularKind::A2_fold: return "A2_fold";
        case SingularKind::A3_cusp: return "A3_cusp";
        case SingularKind::higher_order: return "higher_order";
    }
    return "unknown";
}

std::string_view to_string(LocusTopology topology) {
    switch (topology) {
        case LocusTopology::empty: return "empty";
        case LocusTopology::two_arcs_with_cusps: return "two_arcs_with_cusps";
        case LocusTopology::merged: return "merged";
        case LocusTopology::two_fold_arcs: return "two_fold_arcs";
        case LocusTopology::unclassified: return "unclassified";
    }
    return "unknown";
}

std::vector<SingularPoint> SingularCurve::points() const {
    std::vector<SingularPoint> all;
    for (const auto& arc : arcs) all.insert(all.end(), arc.points.begin(), arc.points.end());
    return all;
}

namespace {

// Critical points of f(·, z, t) on [lo, lo + P), sorted.
std::vector<double> level_critical_points(const WaveMode& mode, double z, double t, double lo,
                                          int seeds) {
    const double P = mode_period(mode);
    const double h = P / seeds;
    const auto fx = [&](double X) { return f_partial(mode, 1, 0, 0, X, z, t); };
    const auto fdf = [&](double X, double& v, double& d) {
        v = f_partial(mode, 1, 0, 0, X, z, t);
        d = f_partial(mode, 2, 0, 0, X, z, t);
    };
    // Seeds are offset by half a step: callers often centre the window on
    // an extremum, which would otherwise sit exactly on the seam.
    std::vector<double> crit;
    double a = lo + 0.5 * h;
    double fa = fx(a);
    for (int i = 1; i <= seeds; ++i) {
        const double b = lo + (i + 0.5) * h;
        const double fb = fx(b);
        if (fa == 0.0) {
            crit.push_back(a);
        } else if ((fa > 0.0) != (fb > 0.0) && fb != 0.0) {
            crit.push_back(safeguarded_newton(fdf, a, b, 1e-15).x);
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) crit.push_back(a);
    for (double& c : crit) c = wrap_to(c, lo, P);
    std::sort(crit.begin(), crit.end());
    // An exact zero on the seam can be reported from both ends.
    crit.erase(std::unique(crit.begin(), crit.end(),
                           [&](double x, double y) { return y - x < 1e-12 * P; }),
               crit.end());
    if (crit.size() > 1 && crit.back() - crit.front() > P * (1.0 - 1e-12)) crit.pop_back();
    return crit;
}

double f_at(const WaveMode& mode, double X, double z, double t) { return f_field(mode, X, z, t); }

struct Newton2Result {
    double X = 0.0;
    double z = 0.0;
    bool converged = false;
};

// Newton on G(X, z) = 0 with a backtracking line search on |G|.
template <class Residual>
Newton2Result newton2(Residual&& G, double X, double z, double z_lo, double z_hi,
                      double tol) {
    double g1 = 0.0, g2 = 0.0, j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    G(X, z, g1, g2, j11, j12, j21, j22);
    for (int it = 0; it < 100; ++it) {
        const double norm = std::hypot(g1, g2);
        if (norm <= tol) return {X, z, true};
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dX = -(g1 * j22 - g2 * j12) / det;
        const double dz = -(j11 * g2 - j21 * g1) / det;
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            const double Xn = X + lambda * dX;
            const double zn = std::clamp(z + lambda * dz, z_lo, z_hi);
            double n1, n2, k11, k12, k21, k22;
            G(Xn, zn, n1, n2, k11, k12, k21, k22);
            if (std::hypot(n1, n2) < norm || std::hypot(n1, n2) <= tol) {
                X = Xn;
                z = zn;
                g1 = n1;
                g2 = n2;
                j11 = k11;
                j12 = k12;
                j21 = k21;
                j22 = k22;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    return {X, z, std::hypot(g1, g2) <= tol};
}

// A₃ point: f = 0, f_X = 0.
Newton2Result refine_cusp(const WaveMode& mode, double X, double z, double t, double tol) {
    const auto G = [&](double x, double zz, double& g1, double& g2, double& j11, double& j12,
                       double& j21, double& j22) {
        g1 = f_partial(mode, 0, 0, 0, x, zz, t);
        g2 = f_partial(mode, 1, 0, 0, x, zz, t);
        j11 = g2;
        j12 = f_partial(mode, 0, 1, 0, x, zz, t);
        j21 = f_partial(mode, 2, 0, 0, x, zz, t);
        j22 = f_partial(mode, 1, 1, 0, x, zz, t);
    };
    return newton2(G, X, z, 0.0, mode.params.B(), tol);
}

// Critical point of f in (X, z): f_X = f_z = 0.
Newton2Result refine_critical(const WaveMode& mode, double X, double z, double t, double tol) {
    const auto G = [&](double x, double zz, double& g1, double& g2, double& j11, double& j12,
                       double& j21, double& j22) {
        g1 = f_partial(mode, 1, 0, 0, x, zz, t);
        g2 = f_partial(mode, 0, 1, 0, x, zz, t);
        j11 = f_partial(mode, 2, 0, 0, x, zz, t);
        j12 = f_partial(mode, 1, 1, 0, x, zz, t);
        j21 = j12;
        j22 = f_partial(mode, 0, 2, 0, x, zz, t);
    };
    return newton2(G, X, z, 0.0, mode.params.B(), tol);
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Greedy nearest pairing of X values on the circle; returns index pairs.
std::vector<std::pair<int, int>> greedy_pairs(const std::vector<double>& a,
                                              const std::vector<double>& b, double period,
                                              double max_dist, bool same_set) {
    struct Cand {
        double d;
        int i;
        int j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = same_set ? i + 1 : 0; j < static_cast<int>(b.size()); ++j) {
            const double d = std::abs(periodic_delta(a[i], b[j], period));
            if (d < max_dist) cands.push_back({d, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
    std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
    std::vector<std::pair<int, int>> out;
    for (const auto& c : cands) {
        if (same_set) {
            if (used_a[c.i] || used_a[c.j]) continue;
            used_a[c.i] = used_a[c.j] = 1;
        } else {
            if (used_a[c.i] || used_b[c.j]) continue;
            used_a[c.i] = used_b[c.j] = 1;
        }
        out.emplace_back(c.i, c.j);
    }
    return out;
}

}  // namespace

std::vector<double> level_roots(const WaveMode& mode, double z, double t, double lo,
                                double f_tol, int seeds_per_period) {
    const double P = mode_period(mode);
    const std::vector<double> crit = level_critical_points(mode, z, t, lo, seeds_per_period);
    std::vector<double> roots;
    if (crit.size() < 2) return roots;
    const auto fdf = [&](double X, double& v, double& d) {
        v = f_at(mode, X, z, t);
        d = f_partial(mode, 1, 0, 0, X, z, t);
    };
    for (std::size_t i = 0; i < crit.size(); ++i) {
        const double a = crit[i];
        const double b = (i + 1 < crit.size()) ? crit[i + 1] : crit[0] + P;
        const double fa = f_at(mode, a, z, t);
        const double fb = f_at(mode, b, z, t);
        if (fa == 0.0 || fb == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;
        roots.push_back(wrap_to(safeguarded_newton(fdf, a, b, f_tol).x, lo, P));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

LevelExtremum level_minimum(const WaveMode& mode, double z, double t, double lo,
                            int seeds_per_period) {
    LevelExtremum best{lo, f_at(mode, lo, z, t)};
    for (double c : level_critical_points(mode, z, t, lo, seeds_per_period)) {
        const double v = f_at(mode, c, z, t);
        if (v < best.f) best = {c, v};
    }
    return best;
}

SingularKind classify_point(const WaveMode& mode, double X, double z, double t,
                            const SingularTolerances& tol) {
    const double f = f_at(mode, X, z, t);
    if (!(std::abs(f) < tol.f_tol)) {
        std::ostringstream msg;
        msg << "classify_point: (X, z, t) = (" << X << ", " << z << ", " << t
            << ") is not on the singular locus (|f| = " << std::abs(f) << ")";
        throw NumericalError(msg.str());
    }
    if (std::abs(f_partial(mode, 1, 0, 0, X, z, t)) >= tol.grad_tol) return SingularKind::A2_fold;
    // A₃ unless the locus itself degenerates (∇f = 0) or f_XX vanishes too.
    if (std::abs(f_partial(mode, 0, 1, 0, X, z, t)) < tol.grad_tol ||
        std::abs(f_partial(mode, 2, 0, 0, X, z, t)) < tol.grad_tol)
        return SingularKind::higher_order;
    return SingularKind::A3_cusp;
}

SingularCurve singular_locus(const WaveMode& mode, double t, XWindow window,
                             const LocusOptions& options) {
    const double P = mode_period(mode);
    if (!(window.hi - window.lo >= P * (1.0 - 1e-12))) {
        std::ostringstream msg;
        msg << "singular_locus: window [" << window.lo << ", " << window.hi
            << "] is narrower than one period " << P;
        throw ParameterError(msg.str());
    }
    if (options.z_levels < 3) throw ParameterError("singular_locus: need at least 3 z-levels");

    const int N = options.z_levels;
    const double B = mode.params.B();
    const double dz = B / (N - 1);
    const double lo = window.lo;
    const double refine_tol = std::min(1e-13, options.tol.f_tol);

    SingularCurve curve;
    curve.t = t;

    struct Node {
        int level;
        double X;
        double z;
        SingularKind kind;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<int>> level_nodes(N);
    std::vector<std::vector<double>> level_X(N);
    for (int j = 0; j < N; ++j) {
        const double z = (j == N - 1) ? B : j * dz;
        level_X[j] = level_roots(mode, z, t, lo, refine_tol, options.seeds_per_period);
        for (double X : level_X[j]) {
            level_nodes[j].push_back(static_cast<int>(nodes.size()));
            nodes.push_back({j, X, z, classify_point(mode, X, z, t, options.tol)});
        }
    }

    // Saddle of f: if it lies on ΣL_t the two sheets touch (the t″ event).
    bool merged = false;
    SingularPoint saddle_point;
    {
        const LevelExtremum mid = level_minimum(mode, 0.5 * B, t, lo, options.seeds_per_period);
        const Newton2Result crit = refine_critical(mode, mid.X, 0.5 * B, t, 1e-14);
        if (crit.converged && std::abs(f_at(mode, crit.X, crit.z, t)) < options.tol.f_tol) {
            merged = true;
            saddle_point = {wrap_to(crit.X, lo, P), crit.z, t,
                            classify_point(mode, crit.X, crit.z, t, options.tol)};
        }
    }

    if (nodes.empty()) {
        if (merged) {
            curve.arcs.push_back({{saddle_point}, false, false, 1});
            curve.cusps.push_back(saddle_point);
            curve.topology = LocusTopology::merged;
        }
        return curve;
    }

    const double link_tol = 0.25 * P;
    std::vector<std::vector<int>> adj(nodes.size());
    std::vector<char> has_up(nodes.size(), 0), has_down(nodes.size(), 0);
    for (int j = 0; j + 1 < N; ++j) {
        for (auto [a, b] : greedy_pairs(level_X[j], level_X[j + 1], P, link_tol, false)) {
            const int na = level_nodes[j][a];
            const int nb = level_nodes[j + 1][b];
            adj[na].push_back(nb);
            adj[nb].push_back(na);
            has_up[na] = 1;
            has_down[nb] = 1;
        }
    }

    // Tips: roots that stop between two levels pair up across an A₃ point.
    struct Tip {
        int a;
        int b;
        SingularPoint cusp;
    };
    std::vector<Tip> tips;
    const auto collect_tips = [&](int j, bool upward) {
        std::vector<int> ids;
        std::vector<double> xs;
        for (int id : level_nodes[j]) {
            const bool open = upward ? !has_up[id] : !has_down[id];
            if (open) {
                ids.push_back(id);
                xs.push_back(nodes[id].X);
            }
        }
        for (auto [a, b] : greedy_pairs(xs, xs, P, link_tol, true)) {
            const double Xa = nodes[ids[a]].X;
            const double Xmid = Xa + 0.5 * periodic_delta(Xa, nodes[ids[b]].X, P);
            const double zseed = nodes[ids[a]].z + (upward ? 0.5 : -0.5) * dz;
            const Newton2Result r = refine_cusp(mode, Xmid, zseed, t, refine_tol);
            if (!r.converged) {
                std::ostringstream msg;
                msg << "singular_locus: cusp refinement failed near (X, z) = (" << Xmid << ", "
                    << zseed << ") at t = " << t;
                throw NumericalError(msg.str());
            }
            tips.push_back({ids[a], ids[b],
                            {wrap_to(r.X, lo, P), r.z, t,
                             classify_point(mode, r.X, r.z, t, options.tol)}});
        }
    };
    for (int j = 0; j + 1 < N; ++j) collect_tips(j, true);
    for (int j = 1; j < N; ++j) collect_tips(j, false);

    // Graph over nodes plus one vertex per tip.
    const int n_nodes = static_cast<int>(nodes.size());
    const int n_total = n_nodes + static_cast<int>(tips.size());
    adj.resize(n_total);
    DisjointSet dsu(n_total);
    for (int i = 0; i < n_nodes; ++i)
        for (int nb : adj[i]) dsu.unite(i, nb);
    for (int k = 0; k < static_cast<int>(tips.size()); ++k) {
        const int v = n_nodes + k;
        adj[v] = {tips[k].a, tips[k].b};
        adj[tips[k].a].push_back(v);
        adj[tips[k].b].push_back(v);
        dsu.unite(v, tips[k].a);
        dsu.unite(v, tips[k].b);
    }

    const auto vertex_point = [&](int v) -> SingularPoint {
        if (v < n_nodes) return {nodes[v].X, nodes[v].z, t, nodes[v].kind};
        return tips[v - n_nodes].cusp;
    };

    std::vector<char> visited(n_total, 0);
    for (int start_pass = 0; start_pass < 2; ++start_pass) {
        for (int s = 0; s < n_total; ++s) {
            if (visited[s]) continue;
            // First pass starts at path ends, second pass picks up closed loops.
            if (start_pass == 0 && adj[s].size() != 1) continue;
            SingularArc arc;
            int prev = -1;
            int cur = s;
            double X_prev = 0.0;
            while (cur >= 0 && !visited[cur]) {
                visited[cur] = 1;
                SingularPoint p = vertex_point(cur);
                if (!arc.points.empty()) p.X = X_prev + periodic_delta(X_prev, p.X, P);
                X_prev = p.X;
                if (cur < n_nodes) {
                    if (nodes[cur].level == 0) arc.touches_bottom = true;
                    if (nodes[cur].level == N - 1) arc.touches_top = true;
                } else {
                    ++arc.cusp_count;
                    curve.cusps.push_back(p);
                }
                arc.points.push_back(p);
                int next = -1;
                for (int nb : adj[cur])
                    if (nb != prev && !visited[nb]) {
                        next = nb;
                        break;
                    }
                prev = cur;
                cur = next;
            }
            curve.arcs.push_back(std::move(arc));
        }
    }

    if (merged) {
        curve.cusps.push_back(saddle_point);
        curve.topology = LocusTopology::merged;
        return curve;
    }

    const auto all = [&](auto pred) {
        return std::all_of(curve.arcs.begin(), curve.arcs.end(), pred);
    };
    if (curve.arcs.size() == 2 && all([](const SingularArc& a) {
            return a.cusp_count == 1 && (a.touches_bottom != a.touches_top);
        }) &&
        curve.arcs[0].touches_bottom != curve.arcs[1].touches_bottom) {
        curve.topology = LocusTopology::two_arcs_with_cusps;
    } else if (curve.arcs.size() == 2 && all([](const SingularArc& a) {
                   return a.cusp_count == 0 && a.touches_bottom && a.touches_top;
               })) {
        curve.topology = LocusTopology::two_fold_arcs;
    } else {
        curve.topology = LocusTopology::unclassified;
    }
    return curve;
}

LevelEnvelope level_envelope(const WaveMode& mode, double z, double t) {
    const double P = mode_period(mode);
    const double a = f_at(mode, 0.0, z, t) - 1.0;
    const double b = f_at(mode, 0.25 * P, z, t) - 1.0;
    const double phase = std::atan2(b, a);
    return {a, b, std::hypot(a, b), wrap_to((phase + kPi) / mode.wavevector.m, 0.0, P)};
}

double catastrophe_time_at(const WaveMode& mode, double z) {
    if (!(mode.omega.im > 0.0))
        throw NumericalError("catastrophe_times: mode is not growing (omega_i <= 0); f never vanishes");
    if (!(mode.eta > 0.0))
        throw NumericalError("catastrophe_times: eta = 0 leaves f = 1 for all time");
    const auto g = [&](double t) { return 1.0 - level_envelope(mode, z, t).amplitude; };
    double lo = 0.0;
    for (int i = 0; i < 60 && g(lo) <= 0.0; ++i) lo -= 10.0;
    double hi = 1.0;
    for (int i = 0; i < 60 && g(hi) > 0.0; ++i) hi *= 2.0;
    if (!(g(lo) > 0.0) || !(g(hi) <= 0.0))
        throw NumericalError("catastrophe_times: could not bracket the tangency time");
    return bisect(g, lo, hi, 0.0, 1e-14).x;
}

CatastropheTimes catastrophe_times(const WaveMode& mode) {
    const double P = mode_period(mode);
    const double B = mode.params.B();
    const double t_bottom = catastrophe_time_at(mode, 0.0);
    const double t_top = catastrophe_time_at(mode, B);
    CatastropheTimes out;
    out.z_prime = t_top < t_bottom ? B : 0.0;
    out.t_prime = std::min(t_bottom, t_top);
    out.t_double_prime = catastrophe_time_at(mode, 0.5 * B);
    out.X_prime = wrap_to(level_envelope(mode, out.z_prime, out.t_prime).X_min, kLandmarkOrigin, P);
    out.X_double_prime =
        wrap_to(level_envelope(mode, 0.5 * B, out.t_double_prime).X_min, kLandmarkOrigin, P);
    return out;
}

}  // namespace eady
