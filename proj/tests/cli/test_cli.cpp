// End-to-end checks of the `eady` executable: file layout, exit codes,
// determinism and config precedence.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eady/io.hpp"
#include "eady/spectral.hpp"

#ifndef EADY_CLI_PATH
#error "EADY_CLI_PATH must name the eady executable"
#endif

namespace fs = std::filesystem;
using namespace eady;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("eady_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + EADY_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::CsvDocument load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return io::read_csv(in);
}

bool empty_or_missing(const fs::path& dir) {
    return !fs::exists(dir) || fs::is_empty(dir);
}

}  // namespace

TEST_CASE("dispersion writes metadata, header and a resolved config") {
    const fs::path dir = scratch("dispersion");
    REQUIRE(run("dispersion --nu 0,0.5,1.0 --samples 50 --out-dir " + dir.string()) == 0);
    const io::CsvDocument doc = load(dir / "dispersion.csv");
    CHECK(doc.metadata.at("artifact") == "eady");
    CHECK(doc.metadata.contains("version"));
    CHECK(doc.metadata.at("params").at("q_g").get<double>() == doctest::Approx(0.5));
    CHECK(doc.columns == std::vector<std::string>{"m", "nu", "omega_re", "omega_im", "phi"});
    CHECK(doc.rows.size() == 150);
    CHECK(fs::exists(dir / "dispersion_config.json"));

    // Growth rate at angle nu is cos(nu) times the nu = 0 rate.
    const std::size_t im = doc.column("omega_im");
    for (std::size_t i = 0; i < 50; ++i) {
        const double g0 = std::stod(doc.rows[i][im]);
        for (int a = 1; a < 3; ++a) {
            const double nu = std::stod(doc.rows[50 * a + i][doc.column("nu")]);
            const double g = std::stod(doc.rows[50 * a + i][im]);
            CHECK(g == doctest::Approx(std::cos(nu) * g0).epsilon(1e-12).scale(1e-14));
        }
    }
}

TEST_CASE("unknown flag exits 1 and writes nothing") {
    const fs::path dir = scratch("unknown");
    CHECK(run("velocity --t 8.5 --no-such-flag --out-dir " + dir.string()) == 1);
    CHECK(empty_or_missing(dir));
    CHECK(run("no-such-command --out-dir " + dir.string()) == 1);
    CHECK(empty_or_missing(dir));
}

TEST_CASE("invalid parameters exit nonzero and write nothing") {
    const fs::path dir = scratch("invalid");
    CHECK(run("field --F 1 --out-dir " + dir.string()) == 1);
    CHECK(run("field --F 1.5 --out-dir " + dir.string()) == 1);
    CHECK(run("field --k 0 --l 0 --out-dir " + dir.string()) == 1);
    CHECK(empty_or_missing(dir));
}

TEST_CASE("identical invocations give byte-identical files") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    for (const fs::path& d : {a, b}) {
        REQUIRE(run("fronts --t 8.5 --z-levels 64 --out-dir " + d.string()) == 0);
        REQUIRE(run("velocity --t 6.5,8.5 --nx 32 --nz 16 --out-dir " + d.string()) == 0);
        REQUIRE(run("curvature --t 4 --nx 64 --nz 16 --out-dir " + d.string()) == 0);
    }
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const fs::path other = b / e.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(e.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared == 7);
}

TEST_CASE("config file values apply unless a flag overrides them") {
    const fs::path dir = scratch("config");
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"params": {"F": 0.5, "B": 1.0}, "k": 3.0, "t": 2.0, "nx": 5, "nz": 3})";
    const fs::path out = dir / "out";
    REQUIRE(run("field --config " + cfg.string() + " --B 2 --out-dir " + out.string()) == 0);
    const io::CsvDocument doc = load(out / "field.csv");
    CHECK(doc.metadata.at("params").at("F").get<double>() == 0.5);
    CHECK(doc.metadata.at("params").at("B").get<double>() == 2.0);
    CHECK(doc.metadata.at("mode").at("k").get<double>() == 3.0);
    CHECK(doc.metadata.at("t").get<double>() == 2.0);
    CHECK(doc.rows.size() == 15);
}

TEST_CASE("EADY_OUT_DIR is the default output directory") {
    const fs::path dir = scratch("env");
    const std::string cmd = "EADY_OUT_DIR=" + dir.string() + " \"" + EADY_CLI_PATH +
                            "\" field --nx 3 --nz 2 > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "field.csv"));
}

TEST_CASE("singular summary reports the catastrophe landmarks") {
    const fs::path dir = scratch("singular");
    REQUIRE(run("singular --t 6.5 --z-levels 64 --out-dir " + dir.string()) == 0);
    std::ifstream in(dir / "singular_summary.json");
    const nlohmann::json s = nlohmann::json::parse(in);
    CHECK(s.at("t_prime").get<double>() == doctest::Approx(5.3078529).epsilon(1e-6));
    CHECK(s.at("t_double_prime").get<double>() == doctest::Approx(7.5653345).epsilon(1e-6));
    CHECK(s.at("X_prime_mod_pi").get<double>() == doctest::Approx(4.0913842).epsilon(1e-6));
    CHECK(s.at("X_double_prime_mod_pi").get<double>() ==
          doctest::Approx(4.9268265).epsilon(1e-6));
    const io::CsvDocument doc = load(dir / "singular.csv");
    CHECK(doc.columns == std::vector<std::string>{"t", "X", "z", "kind"});
    CHECK(!doc.rows.empty());
}

TEST_CASE("velocity metadata records the window and amplitude") {
    const fs::path dir = scratch("velocity");
    REQUIRE(run("velocity --t 8.5 --nx 16 --nz 8 --format json --out-dir " + dir.string()) == 0);
    std::ifstream in(dir / "velocity_t8.5.json");
    const nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("metadata").at("eta").get<double>() == 0.01);
    CHECK(j.at("metadata").contains("window"));
    CHECK(j.at("columns").size() == 6);
    CHECK(!j.at("rows").empty());
}

TEST_CASE("reproduce runs every landmark and writes a report") {
    const fs::path dir = scratch("reproduce");
    REQUIRE(run("reproduce --out-dir " + dir.string()) == 0);
    std::ifstream in(dir / "reproduce_report.json");
    const nlohmann::json r = nlohmann::json::parse(in);
    CHECK(r.at("passed").get<bool>());
    REQUIRE(r.at("criteria").size() == 10);
    for (const auto& c : r.at("criteria")) {
        CHECK(c.at("passed").get<bool>());
        CHECK(!c.at("values").empty());
    }
}
