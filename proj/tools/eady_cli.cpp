// eady: command-line front end. Every subcommand computes all of its output
// in memory first and only then writes files (atomically), so a failed or
// rejected run leaves nothing behind.
//
// Exit status: 0 success, 1 usage error (bad flags, invalid parameters),
// 2 numerical failure (non-convergence, or a failed landmark in `reproduce`).

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eady/fronts.hpp"
#include "eady/geometry.hpp"
#include "eady/io.hpp"
#include "eady/kinematics.hpp"
#include "eady/numerics.hpp"
#include "eady/singularity.hpp"
#include "eady/spectral.hpp"
#include "eady/verify/landmarks.hpp"
#include "eady/wavefield.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::optional<double> F, B, k, l, m, nu, eta;
};

struct Output {
    std::string name;
    std::string content;
};

// Flag, else config key, else default.
template <class T>
T pick(const std::optional<T>& flag, const json& cfg, const char* key, T fallback) {
    if (flag) return *flag;
    if (cfg.contains(key)) return cfg.at(key).get<T>();
    return fallback;
}

std::vector<double> pick_list(const std::vector<double>& flag, const json& cfg, const char* key,
                              std::vector<double> fallback) {
    if (!flag.empty()) return flag;
    if (cfg.contains(key)) {
        const json& v = cfg.at(key);
        return v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
    }
    return fallback;
}

struct Resolved {
    json config;  // file contents, {} if none
    eady::WaveMode mode = eady::default_mode();
    fs::path out_dir;
    std::string format;
    json echo;  // resolved configuration written beside the outputs
};

Resolved resolve(const std::string& subcommand, const CommonFlags& c) {
    Resolved r;
    r.config = json::object();
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw eady::ParameterError("cannot read config file " + c.config_path);
        try {
            r.config = json::parse(in);
        } catch (const json::exception& e) {
            throw eady::ParameterError("config file " + c.config_path + ": " + e.what());
        }
        if (!r.config.is_object()) throw eady::ParameterError("config file must hold a JSON object");
    }
    const json& cfg = r.config;

    // "params" may hold {F, B} or the dimensional set; flags override F and B.
    json pj = cfg.contains("params") ? cfg.at("params") : json::object();
    eady::EadyParams params = eady::default_params();
    if (pj.contains("U")) params = eady::params_from_json(pj);
    const double F = c.F ? *c.F : pj.contains("F") ? pj.at("F").get<double>() : params.F();
    const double B = c.B ? *c.B : pj.contains("B") ? pj.at("B").get<double>() : params.B();
    params = eady::EadyParams::from_froude_burger(F, B);

    const double eta = pick(c.eta, cfg, "eta", 0.01);
    const bool polar = c.m || c.nu || cfg.contains("m") || cfg.contains("nu");
    eady::WaveVector wv;
    if (polar)
        wv = eady::WaveVector::from_polar(pick(c.m, cfg, "m", 2.0), pick(c.nu, cfg, "nu", 0.0));
    else
        wv = eady::WaveVector::from_kl(pick(c.k, cfg, "k", 2.0), pick(c.l, cfg, "l", 0.0));
    r.mode = eady::make_mode(params, wv, eta);

    std::string out = c.out_dir;
    if (out.empty() && cfg.contains("out_dir")) out = cfg.at("out_dir").get<std::string>();
    if (out.empty()) {
        const char* env = std::getenv("EADY_OUT_DIR");
        out = env && *env ? env : ".";
    }
    r.out_dir = out;
    r.format = c.format;
    if (c.format == "csv" && cfg.contains("format")) r.format = cfg.at("format").get<std::string>();
    if (r.format != "csv" && r.format != "json")
        throw eady::ParameterError("format must be csv or json");

    r.echo = eady::io::base_metadata(r.mode);
    r.echo["subcommand"] = subcommand;
    r.echo["format"] = r.format;
    return r;
}

std::string render(const Resolved& r, const json& meta, const eady::io::Table& t) {
    return r.format == "json" ? eady::io::to_json_text(meta, t) : eady::io::to_csv(meta, t);
}

std::string ext(const Resolved& r) { return r.format == "json" ? ".json" : ".csv"; }

std::string t_tag(double t) {
    // Stable file-name tag: shortest representation that round-trips.
    std::string s = eady::io::format_double(t);
    for (char& ch : s)
        if (ch == '-') ch = 'm';
    return s;
}

void write_all(const Resolved& r, const std::string& subcommand, std::vector<Output> outputs) {
    outputs.push_back({subcommand + "_config.json", r.echo.dump(2) + "\n"});
    for (const Output& o : outputs) eady::io::write_file_atomic(r.out_dir / o.name, o.content);
    for (const Output& o : outputs) std::cout << (r.out_dir / o.name).string() << "\n";
}

// --- subcommands -----------------------------------------------------------

struct DispersionFlags {
    std::vector<double> nu;
    std::optional<double> m_min, m_max;
    std::optional<int> samples;
};

std::vector<Output> run_dispersion(Resolved& r, const DispersionFlags& f) {
    const std::vector<double> nus = pick_list(f.nu, r.config, "nu_list", {0.0});
    const double m_min = pick(f.m_min, r.config, "m_min", 0.01);
    const double m_max = pick(f.m_max, r.config, "m_max", 4.0);
    const int n = pick(f.samples, r.config, "samples", 400);
    if (!(0.0 < m_min && m_min < m_max) || n < 2)
        throw eady::ParameterError("dispersion: need 0 < m-min < m-max and samples >= 2");
    eady::io::Table t{{"m", "nu", "omega_re", "omega_im", "phi"}, {}};
    for (double nu : nus)
        for (int i = 0; i < n; ++i) {
            const double m = m_min + (m_max - m_min) * i / (n - 1);
            const eady::ComplexFrequency w =
                eady::solve_omega(eady::WaveVector::from_polar(m, nu), r.mode.params);
            t.add_row({m, nu, w.re, w.im, eady::dispersion_rhs(m, r.mode.params)});
        }
    json meta = eady::io::base_metadata(r.mode.params);
    meta["nu_list"] = nus;
    meta["m_range"] = {m_min, m_max};
    r.echo["nu_list"] = nus;
    r.echo["m_min"] = m_min;
    r.echo["m_max"] = m_max;
    r.echo["samples"] = n;
    return {{"dispersion" + ext(r), render(r, meta, t)}};
}

struct FieldFlags {
    std::optional<double> t, Y, X_min, X_max;
    std::optional<int> nx, nz;
};

std::vector<Output> run_field(Resolved& r, const FieldFlags& f) {
    const double t = pick(f.t, r.config, "t", 0.0);
    const double Y = pick(f.Y, r.config, "Y", 0.0);
    const double P = eady::mode_period(r.mode);
    const double X_min = pick(f.X_min, r.config, "X_min", eady::kPi);
    const double X_max = pick(f.X_max, r.config, "X_max", eady::kPi + P);
    const int nx = pick(f.nx, r.config, "nx", 128);
    const int nz = pick(f.nz, r.config, "nz", 64);
    if (!(X_min < X_max) || nx < 2 || nz < 2) throw eady::ParameterError("field: bad grid");
    eady::io::Table tab{{"X", "z", "S", "S_X", "S_z", "f"}, {}};
    const double B = r.mode.params.B();
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nx; ++i) {
            const double X = X_min + (X_max - X_min) * i / (nx - 1);
            const double z = B * j / (nz - 1);
            const eady::JetBundle jet = eady::eval_jet(r.mode, X, Y, z, t);
            const auto [Xp, Yp] = eady::rotate_frame(r.mode.wavevector, X, Y);
            (void)Yp;
            tab.add_row({X, z, jet.S, jet.S_X, jet.S_z, eady::f_field(r.mode, Xp, z, t)});
        }
    json meta = eady::io::base_metadata(r.mode);
    meta["t"] = t;
    meta["Y"] = Y;
    r.echo.update({{"t", t}, {"Y", Y}, {"X_min", X_min}, {"X_max", X_max}, {"nx", nx}, {"nz", nz}});
    return {{"field" + ext(r), render(r, meta, tab)}};
}

struct SingularFlags {
    std::vector<double> t;
    std::optional<int> z_levels;
    std::optional<double> window_lo;
};

std::vector<Output> run_singular(Resolved& r, const SingularFlags& f) {
    const std::vector<double> times = pick_list(f.t, r.config, "t", {4.0, 6.5, 8.5});
    eady::LocusOptions opts;
    opts.z_levels = pick(f.z_levels, r.config, "z_levels", opts.z_levels);
    const double lo = pick(f.window_lo, r.config, "window_lo", eady::kLandmarkOrigin);
    const double P = eady::mode_period(r.mode);
    eady::io::Table tab{{"t", "X", "z", "kind"}, {}};
    json topo = json::array();
    for (double t : times) {
        const eady::SingularCurve c = eady::singular_locus(r.mode, t, {lo, lo + P}, opts);
        for (const auto& p : c.points()) tab.add_row({t, p.X, p.z, std::string(eady::to_string(p.kind))});
        for (const auto& p : c.cusps) tab.add_row({t, p.X, p.z, std::string(eady::to_string(p.kind))});
        topo.push_back({{"t", t}, {"topology", std::string(eady::to_string(c.topology))},
                        {"arcs", c.arcs.size()}, {"cusps", c.cusps.size()}});
    }
    json meta = eady::io::base_metadata(r.mode);
    meta["tolerances"] = {{"f_tol", opts.tol.f_tol}, {"grad_tol", opts.tol.grad_tol}};
    meta["z_levels"] = opts.z_levels;
    meta["topology"] = topo;
    std::vector<Output> out{{"singular" + ext(r), render(r, meta, tab)}};
    if (r.mode.wavevector.l == 0.0) {
        const eady::CatastropheTimes ct = eady::catastrophe_times(r.mode);
        json summary = eady::io::base_metadata(r.mode);
        summary["t_prime"] = ct.t_prime;
        summary["t_double_prime"] = ct.t_double_prime;
        // Positions as the representative of their class in [pi, pi + period).
        summary["X_prime_mod_pi"] = eady::wrap_to(ct.X_prime, eady::kLandmarkOrigin, P);
        summary["X_double_prime_mod_pi"] = eady::wrap_to(ct.X_double_prime, eady::kLandmarkOrigin, P);
        summary["z_prime"] = ct.z_prime;
        out.push_back({"singular_summary.json", summary.dump(2) + "\n"});
    }
    r.echo.update({{"t", times}, {"z_levels", opts.z_levels}, {"window_lo", lo}});
    return out;
}

struct FrontsFlags {
    std::vector<double> t;
    std::optional<int> z_levels;
};

std::vector<Output> run_fronts(Resolved& r, const FrontsFlags& f) {
    const std::vector<double> times = pick_list(f.t, r.config, "t", {8.5});
    const int levels = pick(f.z_levels, r.config, "z_levels", 256);
    eady::io::Table tab{{"t", "z", "X1", "X2", "x_front", "rh_lhs", "rh_rhs", "equal_area_residual"}, {}};
    json rh = json::array();
    for (double t : times) {
        const eady::FrontSurface s = eady::front_surface(r.mode, t, levels);
        std::vector<std::pair<double, double>> rows(s.levels.size(), {std::nan(""), std::nan("")});
        try {
            const eady::RankineHugoniotReport rep = eady::rankine_hugoniot_check(s, r.mode);
            std::size_t k = 0;
            for (std::size_t i = 0; i < s.levels.size() && k < rep.rows.size(); ++i)
                if (s.z_grid[i] == rep.rows[k].z) rows[i] = {rep.rows[k].lhs, rep.rows[k].rhs}, ++k;
            rh.push_back({{"t", t}, {"max_rel_error", rep.max_rel_error}, {"rows", rep.rows.size()}});
        } catch (const eady::ParameterError&) {
            rh.push_back({{"t", t}, {"max_rel_error", nullptr}, {"rows", 0}});
        }
        for (std::size_t i = 0; i < s.levels.size(); ++i) {
            if (!s.levels[i]) continue;
            const eady::FrontSection& sec = *s.levels[i];
            tab.add_row({t, sec.z, sec.X1, sec.X2, sec.x_front, rows[i].first, rows[i].second,
                         eady::equal_area_residual(sec, r.mode)});
        }
    }
    json meta = eady::io::base_metadata(r.mode);
    const eady::EnvelopeOptions eo;
    meta["tolerances"] = {{"residual_tol", eo.residual_tol}, {"degenerate_width", eo.degenerate_width},
                          {"tangency_tol", eo.tangency_tol}};
    meta["z_levels"] = levels;
    meta["rankine_hugoniot"] = rh;
    r.echo.update({{"t", times}, {"z_levels", levels}});
    return {{"fronts" + ext(r), render(r, meta, tab)}};
}

struct VelocityFlags {
    std::vector<double> t;
    std::optional<double> X0, t0, y;
    std::optional<int> nx, nz;
    bool keep_irregular = false;
};

std::vector<Output> run_velocity(Resolved& r, const VelocityFlags& f) {
    const std::vector<double> times = pick_list(f.t, r.config, "t", {6.5, 8.5});
    eady::ObservationWindow win;
    if (r.mode.wavevector.l == 0.0 && !(f.X0 && f.t0)) win = eady::ObservationWindow::anchored_at_first_cusp(r.mode);
    win.X0 = pick(f.X0, r.config, "X0", win.X0);
    win.t0 = pick(f.t0, r.config, "t0", win.t0);
    const double y = pick(f.y, r.config, "y", 0.0);
    eady::SnapshotGrid grid;
    grid.nx = pick(f.nx, r.config, "nx", 128);
    grid.nz = pick(f.nz, r.config, "nz", 64);
    grid.keep_irregular = f.keep_irregular;
    std::vector<Output> out;
    for (double t : times) {
        eady::io::Table tab{{"x", "z", "u", "w", "phi", "regular"}, {}};
        for (const auto& s : eady::velocity_snapshot(r.mode, t, win, y, grid))
            tab.add_row({s.x, s.z, s.u, s.w, s.phi, static_cast<long long>(s.regular)});
        json meta = eady::io::base_metadata(r.mode);
        meta["t"] = t;
        meta["y"] = y;
        meta["window"] = {{"X0", win.X0}, {"t0", win.t0}, {"lo", win.lo(t)}, {"hi", win.hi(t)}};
        meta["tolerances"] = {{"stratification", eady::kStratificationTol}};
        out.push_back({"velocity_t" + t_tag(t) + ext(r), render(r, meta, tab)});
    }
    r.echo.update({{"t", times}, {"X0", win.X0}, {"t0", win.t0}, {"y", y}, {"nx", grid.nx},
                   {"nz", grid.nz}, {"keep_irregular", grid.keep_irregular}});
    return out;
}

struct CurvatureFlags {
    std::vector<double> t;
    std::optional<double> z;
    std::optional<int> nx, nz;
};

std::vector<Output> run_curvature(Resolved& r, const CurvatureFlags& f) {
    const std::vector<double> times = pick_list(f.t, r.config, "t", {3.0, 4.0, 5.0});
    const int nx = pick(f.nx, r.config, "nx", 256);
    const int nz = pick(f.nz, r.config, "nz", 64);
    std::optional<double> z_slice = f.z;
    if (!z_slice && r.config.contains("z")) z_slice = r.config.at("z").get<double>();
    const double P = eady::mode_period(r.mode);
    const bool cyl = r.mode.wavevector.l == 0.0;
    std::vector<Output> out;
    for (double t : times) {
        eady::io::Table tab{{"X", "z", "f", "Sc", "signature"}, {}};
        const auto add = [&](const eady::CurvatureSample& s) {
            const double sc = s.Sc && std::abs(s.f) > eady::kCurvatureGuard ? *s.Sc : std::nan("");
            tab.add_row({s.X, s.z, s.f, sc, eady::to_string(s.signature)});
        };
        if (z_slice) {
            for (int i = 0; i < nx; ++i) {
                const double X = eady::kLandmarkOrigin + P * i / nx;
                add(cyl ? eady::scalar_curvature(r.mode, X, *z_slice, t)
                        : eady::rotated_curvature(r.mode, X, *z_slice, t));
            }
        } else {
            for (const auto& s : eady::curvature_field(r.mode, t, {nx, nz}).samples) add(s);
        }
        json meta = eady::io::base_metadata(r.mode);
        meta["t"] = t;
        meta["coordinates"] = cyl ? "X" : "X_rotated";
        meta["tolerances"] = {{"signature", eady::kSignatureTol}, {"guard", eady::kCurvatureGuard}};
        if (z_slice) meta["z"] = *z_slice;
        out.push_back({"curvature_t" + t_tag(t) + ext(r), render(r, meta, tab)});
    }
    r.echo.update({{"t", times}, {"nx", nx}, {"nz", nz}});
    if (z_slice) r.echo["z"] = *z_slice;
    return out;
}

int run_reproduce(std::vector<Output>& out) {
    json report = eady::io::base_metadata(eady::default_mode(0.01));
    report["criteria"] = json::array();
    int failed = 0;
    for (const auto& c : eady::verify::criteria()) {
        const eady::verify::CriterionResult res = eady::verify::run_criterion(c);
        std::cout << eady::verify::format_line(res) << std::endl;
        json j = eady::verify::to_json(res);
        j.erase("seconds");  // keep the report deterministic
        report["criteria"].push_back(j);
        failed += !res.passed;
    }
    report["passed"] = failed == 0;
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    out.push_back({"reproduce_report.json", report.dump(2) + "\n"});
    return failed == 0 ? 0 : 2;
}

void add_common(CLI::App* sub, CommonFlags& c) {
    sub->add_option("--config", c.config_path, "JSON config file (flags override it)");
    sub->add_option("--out-dir", c.out_dir, "output directory (default $EADY_OUT_DIR or .)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--F", c.F, "Froude number");
    sub->add_option("--B", c.B, "Burger number");
    sub->add_option("--k", c.k, "X wavenumber");
    sub->add_option("--l", c.l, "Y wavenumber");
    sub->add_option("--m", c.m, "wavenumber magnitude (with --nu)");
    sub->add_option("--nu", c.nu, "wave direction angle (with --m)");
    sub->add_option("--eta", c.eta, "perturbation amplitude");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semigeostrophic Eady waves: dispersion, catastrophes, fronts, velocity, curvature"};
    app.require_subcommand(1);
    CommonFlags common;

    DispersionFlags df;
    CLI::App* dispersion = app.add_subcommand("dispersion", "growth rates over m for a list of angles");
    {
        CommonFlags& c = common;
        dispersion->add_option("--config", c.config_path, "JSON config file");
        dispersion->add_option("--out-dir", c.out_dir, "output directory");
        dispersion->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        dispersion->add_option("--F", c.F, "Froude number");
        dispersion->add_option("--B", c.B, "Burger number");
        dispersion->add_option("--nu", df.nu, "angles, comma separated")->delimiter(',');
        dispersion->add_option("--m-min", df.m_min, "smallest wavenumber");
        dispersion->add_option("--m-max", df.m_max, "largest wavenumber");
        dispersion->add_option("--samples", df.samples, "wavenumbers per angle");
    }

    FieldFlags ff;
    CLI::App* field = app.add_subcommand("field", "S and its derivatives on an (X, z) grid");
    add_common(field, common);
    field->add_option("--t", ff.t, "time");
    field->add_option("--Y", ff.Y, "dual coordinate Y");
    field->add_option("--X-min", ff.X_min, "grid start");
    field->add_option("--X-max", ff.X_max, "grid end");
    field->add_option("--nx", ff.nx, "X samples");
    field->add_option("--nz", ff.nz, "z samples");

    SingularFlags sf;
    CLI::App* singular = app.add_subcommand("singular", "singular locus and catastrophe times");
    add_common(singular, common);
    singular->add_option("--t", sf.t, "times, comma separated")->delimiter(',');
    singular->add_option("--z-levels", sf.z_levels, "levels traced");
    singular->add_option("--window-lo", sf.window_lo, "start of the X window");

    FrontsFlags frf;
    CLI::App* fronts = app.add_subcommand("fronts", "front sections and the Rankine-Hugoniot check");
    add_common(fronts, common);
    fronts->add_option("--t", frf.t, "times, comma separated")->delimiter(',');
    fronts->add_option("--z-levels", frf.z_levels, "interior levels");

    VelocityFlags vf;
    CLI::App* velocity = app.add_subcommand("velocity", "regularized velocity snapshots");
    add_common(velocity, common);
    velocity->add_option("--t", vf.t, "times, comma separated")->delimiter(',');
    velocity->add_option("--X0", vf.X0, "window anchor position");
    velocity->add_option("--t0", vf.t0, "window anchor time");
    velocity->add_option("--y", vf.y, "physical y of the slice");
    velocity->add_option("--nx", vf.nx, "X samples");
    velocity->add_option("--nz", vf.nz, "z samples");
    velocity->add_flag("--keep-irregular", vf.keep_irregular, "keep points inside fronts");

    CurvatureFlags cf;
    CLI::App* curvature = app.add_subcommand("curvature", "scalar curvature of the solution surface");
    add_common(curvature, common);
    curvature->add_option("--t", cf.t, "times, comma separated")->delimiter(',');
    curvature->add_option("--z", cf.z, "single level instead of the full grid");
    curvature->add_option("--nx", cf.nx, "X samples");
    curvature->add_option("--nz", cf.nz, "z samples");

    CLI::App* reproduce = app.add_subcommand("reproduce", "run the landmark suite");
    reproduce->add_option("--out-dir", common.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        std::vector<Output> out;
        int status = 0;
        std::string name;
        if (*dispersion) {
            name = "dispersion";
            Resolved r = resolve(name, common);
            out = run_dispersion(r, df);
            write_all(r, name, std::move(out));
        } else if (*field) {
            name = "field";
            Resolved r = resolve(name, common);
            out = run_field(r, ff);
            write_all(r, name, std::move(out));
        } else if (*singular) {
            name = "singular";
            Resolved r = resolve(name, common);
            out = run_singular(r, sf);
            write_all(r, name, std::move(out));
        } else if (*fronts) {
            name = "fronts";
            Resolved r = resolve(name, common);
            if (r.mode.wavevector.l != 0.0) throw eady::ParameterError("fronts: l must be 0");
            out = run_fronts(r, frf);
            write_all(r, name, std::move(out));
        } else if (*velocity) {
            name = "velocity";
            Resolved r = resolve(name, common);
            out = run_velocity(r, vf);
            write_all(r, name, std::move(out));
        } else if (*curvature) {
            name = "curvature";
            Resolved r = resolve(name, common);
            out = run_curvature(r, cf);
            write_all(r, name, std::move(out));
        } else if (*reproduce) {
            name = "reproduce";
            Resolved r = resolve(name, common);
            status = run_reproduce(out);
            write_all(r, name, std::move(out));
        }
        return status;
    } catch (const eady::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: configuration: " << e.what() << "\n";
        return 1;
    } catch (const eady::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
}
