// Drives the built executable end to end; paths come from the build system.

#include <catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hybridom/csv.hpp"

using Catch::Matchers::WithinRel;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("hybridom_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    const auto out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd = std::string("\"") + HYBRIDOM_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

json error_of(const Run& r) { return json::parse(r.err).at("error"); }

}  // namespace

TEST_CASE("derive reports the coupling", "[cli]") {
    const auto r = run("--preset fig2b derive");
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["freq_convention"] == "angular");
    CHECK(doc["physical"]["is_bistable"] == true);
    CHECK(doc["physical"]["chi"].get<double>() > 0.0);
}

TEST_CASE("threshold under both frequency readings", "[cli][fixture]") {
    auto r = run("--preset fig2b threshold");
    REQUIRE(r.code == 0);
    CHECK_THAT(json::parse(r.out)["P_th"].get<double>(), WithinRel(3.197107290063597e-05, 1e-10));
    r = run("--preset fig2b --freq-convention ordinary threshold");
    REQUIRE(r.code == 0);
    CHECK_THAT(json::parse(r.out)["P_th"].get<double>(), WithinRel(0.049828370410124445, 1e-10));
}

TEST_CASE("steady-state lists three roots on the red sideband", "[cli]") {
    const auto r = run("--preset fig2b steady-state");
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["roots"].size() == 3);
    CHECK(doc["roots"][1]["stability"] == "unstable");
}

TEST_CASE("validation failures exit 2 with every issue", "[cli][error]") {
    const auto cfg = write_file("bad.json", R"({"physical": {"cavity_length": "x", "wobble": 1}})");
    const auto r = run("--config \"" + cfg.string() + "\" derive");
    CHECK(r.code == 2);
    const auto err = error_of(r);
    CHECK(err["kind"] == "validation");
    CHECK(err["exit_code"] == 2);
    CHECK(err["issues"].size() >= 2);
    CHECK(r.out.empty());
}

TEST_CASE("usage errors exit 2", "[cli][error]") {
    CHECK(run("--preset fig2b frobnicate").code == 2);
    CHECK(run("derive").code == 2);
    CHECK(run("--preset nope derive").code == 2);
    CHECK(run("--preset fig2b --freq-convention radians derive").code == 2);
    const auto r = run("--preset fig2b --config x.json derive");
    CHECK(r.code == 2);
    CHECK(error_of(r)["kind"] == "validation");
}

TEST_CASE("numerical failures exit 3", "[cli][error]") {
    // single cavity below the bistability onset has no threshold
    const auto no_threshold = write_file("flat.json", R"({"physical": {
        "cavity_length": 1e-3, "mirror_mass": 1e-11, "laser_wavelength": 794.98e-9,
        "mech_freq": 1e7, "mech_quality": 1e7, "optical_decay_A": {"times_omega_m": 0.1},
        "detuning_A": {"times_omega_m": 0.1}, "input_power": 7e-6}})");
    auto r = run("--config \"" + no_threshold.string() + "\" threshold");
    CHECK(r.code == 3);
    CHECK(error_of(r)["kind"] == "no-threshold");

    std::string unstable = R"({"linearized": {"detuning": 1, "detuning_C": 1, "atom_detuning": 100,
        "optical_decay_A": 100, "optical_decay_C": 1, "atom_decay": 1000, "mech_damping": 1e-5,
        "atom_coupling": 0.1, "cavity_coupling": 200, "om_coupling": 50, "thermal_occupation": 1e4,
        "detuning_convention": "cavity_minus_laser"}})";
    const auto cfg = write_file("unstable.json", unstable);
    r = run("--config \"" + cfg.string() + "\" cool --steady-state");
    CHECK(r.code == 3);
    CHECK(error_of(r)["kind"] == "no-steady-state");
}

TEST_CASE("power sweep output is deterministic", "[cli]") {
    const auto a = scratch() / "a.csv", b = scratch() / "b.csv";
    const auto ra = run("--preset fig2b --out \"" + a.string() + "\" sweep-power");
    const auto rb = run("--preset fig2b --out \"" + b.string() + "\" sweep-power");
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(ra.out == rb.out);

    const auto summary = json::parse(ra.out);
    REQUIRE(summary["jumps"].size() == 2);
    CHECK(summary["jumps"][0]["direction"] == "up");
    CHECK(summary["jumps"][1]["direction"] == "down");
    CHECK_THAT(summary["jumps"][0]["power"].get<double>(), WithinRel(3.197107290063597e-05, 1e-3));

    std::ifstream in(a);
    const auto table = hybridom::read_csv(in);
    CHECK(table.rows.size() == 4000);
}

TEST_CASE("threshold map has one row per cell", "[cli]") {
    const auto out = scratch() / "map.csv";
    REQUIRE(run("--preset fig4 --out \"" + out.string() + "\" threshold-map").code == 0);
    std::ifstream in(out);
    const auto table = hybridom::read_csv(in);
    CHECK(table.rows.size() == 121 * 100);
}

TEST_CASE("detached cavity stays near the bath occupancy", "[cli][reference]") {
    const auto r = run("--preset fig5 cool --single-cavity --samples 20");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto table = hybridom::read_csv(in);
    REQUIRE(table.rows.size() == 21);
    const double n_b = *hybridom::parse_double(table.rows.back()[table.column("n_b")]);
    CHECK(std::abs(n_b - 1e4) <= 0.1 * 1e4);
}

TEST_CASE("hybrid steady state over the CLI", "[cli][fixture]") {
    const auto r = run("--preset fig5 cool --steady-state");
    REQUIRE(r.code == 0);
    CHECK_THAT(json::parse(r.out)["n_b"].get<double>(), WithinRel(194.00135743110545, 1e-8));
}
