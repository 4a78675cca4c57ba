#include <algorithm>
#include <catch_amalgamated.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "hybridom/config.hpp"
#include "hybridom/csv.hpp"
#include "support.hpp"

using namespace hybridom;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using testing::Draw;

namespace {

constexpr const char* kMinimal = R"({
  "physical": {
    "cavity_length": 1e-3, "mirror_mass": 1e-11, "laser_wavelength": 794.98e-9,
    "mech_freq": 1e7, "mech_quality": 1e7,
    "optical_decay_A": {"times_omega_m": 0.1}, "detuning_A": %DET%,
    "input_power": 7e-6
  }
})";

std::string with_detuning(const std::string& det) {
    std::string s = kMinimal;
    s.replace(s.find("%DET%"), 5, det);
    return s;
}

std::vector<std::string> issues_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& what) {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const std::string& s) { return s.find(what) != std::string::npos; });
}

}  // namespace

TEST_CASE("frequency forms", "[config]") {
    const double w = 1e7;
    const double two_pi = 2.0 * constants::pi;
    CHECK(parse_config(with_detuning("1e7")).physical->detuning_A == w);  // angular by default
    CHECK(parse_config(with_detuning(R"({"rad_per_s": 3e6})")).physical->detuning_A == 3e6);
    CHECK_THAT(parse_config(with_detuning(R"({"hz": 1e6})")).physical->detuning_A, WithinRel(two_pi * 1e6, 1e-15));
    CHECK(parse_config(with_detuning(R"({"times_omega_m": 0.5})")).physical->detuning_A == 0.5 * w);
}

TEST_CASE("ordinary reading scales bare numbers only", "[config]") {
    const double two_pi = 2.0 * constants::pi;
    const auto cfg = parse_config(with_detuning("2e6"), FreqConvention::Ordinary);
    CHECK(cfg.convention == FreqConvention::Ordinary);
    CHECK_THAT(cfg.physical->mech_freq, WithinRel(two_pi * 1e7, 1e-15));
    CHECK_THAT(cfg.physical->detuning_A, WithinRel(two_pi * 2e6, 1e-15));
    // multiples of ω_m follow ω_m
    CHECK_THAT(cfg.physical->optical_decay_A, WithinRel(0.1 * two_pi * 1e7, 1e-15));
    CHECK(parse_config(with_detuning(R"({"rad_per_s": 3e6})"), FreqConvention::Ordinary).physical->detuning_A == 3e6);
}

TEST_CASE("document convention and override", "[config]") {
    std::string text = with_detuning("1e7");
    text.insert(1, R"("freq_convention": "ordinary",)");
    CHECK(parse_config(text).convention == FreqConvention::Ordinary);
    CHECK(parse_config(text, FreqConvention::Angular).convention == FreqConvention::Angular);
    CHECK(parse_config(text, FreqConvention::Angular).physical->mech_freq == 1e7);
}

TEST_CASE("every problem is reported at once", "[config][error]") {
    const auto issues = issues_of(R"({
      "colour": 1,
      "physical": {
        "cavity_length": -1, "mirror_mass": "heavy", "laser_wavelength": 794.98e-9,
        "mech_freq": 1e7, "optical_decay_A": {"furlongs": 2}, "detuning_A": 1e7,
        "input_power": 7e-6, "mech_quality": 1e7, "spin": 0.5
      },
      "evolution": {"samples": 0}
    })");
    CHECK(issues.size() >= 5);
    CHECK(mentions(issues, "colour: unknown field"));
    CHECK(mentions(issues, "physical.spin: unknown field"));
    CHECK(mentions(issues, "physical.mirror_mass: expected a number"));
    CHECK(mentions(issues, "physical.optical_decay_A: unknown unit 'furlongs'"));
    CHECK(mentions(issues, "evolution.samples"));
}

TEST_CASE("missing and malformed inputs", "[config][error]") {
    CHECK(mentions(issues_of("{"), "malformed JSON"));
    CHECK(mentions(issues_of("[]"), "expected a JSON object"));
    CHECK(mentions(issues_of(R"({"physical": {"cavity_length": 1e-3}})"), "physical.mech_freq: missing required field"));
    CHECK(mentions(issues_of(R"({"freq_convention": "radians"})"), "freq_convention"));
    CHECK(mentions(issues_of(with_detuning("1e999")), "number overflow"));
    CHECK(mentions(issues_of(R"({"linearized": {"detuning_convention": "sideways"}})"), "linearized.detuning_convention"));
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("physical validation failures name the field", "[config][error]") {
    std::string text = with_detuning("1e7");
    text.replace(text.find("\"input_power\": 7e-6"), 19, "\"input_power\": -1");
    const auto issues = issues_of(text);
    REQUIRE(issues.size() == 1);
    CHECK_THAT(issues[0], ContainsSubstring("input_power"));
}

TEST_CASE("every preset parses", "[config]") {
    const auto names = preset_names();
    CHECK(names.size() == 6);
    for (auto name : names) {
        INFO(name);
        const auto doc = preset_document(name);
        CHECK_NOTHROW(parse_config(doc));
        CHECK_NOTHROW(parse_config(doc, FreqConvention::Ordinary));
    }
    CHECK_THROWS_AS(preset_document("fig9"), ConfigError);
}

TEST_CASE("preset contents", "[config]") {
    const auto fig2a = parse_config(preset_document("fig2a"));
    REQUIRE(fig2a.sweep);
    REQUIRE(fig2a.sweep->series.size() == 3);
    CHECK(fig2a.sweep->series[2].params.input_power == 7e-6);
    CHECK(fig2a.sweep->detuning_A->points == 801);
    CHECK(fig2a.sweep->detuning_A->range.hi == 2e7);

    const auto fig3b = parse_config(preset_document("fig3b"));
    REQUIRE(fig3b.sweep->series.size() == 4);
    const auto& s0 = fig3b.sweep->series[0].params;
    CHECK_THAT(s0.atom_detuning / s0.atom_decay, WithinRel(-40.0, 1e-12));
    CHECK_THAT(fig3b.sweep->series[3].params.atom_detuning / s0.atom_decay, WithinRel(10.0, 1e-12));

    const auto fig4 = parse_config(preset_document("fig4"));
    REQUIRE(fig4.threshold_map);
    CHECK(fig4.threshold_map->delta_at_over_gamma == default_map_spec().delta_at_over_gamma);
    CHECK(fig4.threshold_map->kC_over_omega_m == default_map_spec().kC_over_omega_m);

    const auto fig5 = parse_config(preset_document("fig5"));
    REQUIRE(fig5.linearized);
    CHECK(fig5.linearized->detuning_convention == DetuningConvention::LaserMinusCavity);
    CHECK(fig5.linearized->om_coupling == 50.0);
    CHECK(fig5.evolution.initial_phonons == 1e4);
}

TEST_CASE("threshold map axes", "[config]") {
    auto doc = with_detuning("1e7");
    doc.insert(doc.rfind('}'), R"(, "threshold_map": {"delta_at_over_gamma": [-1, 0, 1], "kC_over_omega_m": {"lo": 0.1, "hi": 0.3, "points": 3}})");
    const auto cfg = parse_config(doc);
    CHECK(cfg.threshold_map->delta_at_over_gamma == std::vector<double>{-1.0, 0.0, 1.0});
    REQUIRE(cfg.threshold_map->kC_over_omega_m.size() == 3);
    CHECK(cfg.threshold_map->kC_over_omega_m.back() == 0.3);
}

TEST_CASE("double formatting round-trips exactly", "[csv][property]") {
    Draw draw(51);
    for (int i = 0; i < 20000; ++i) {
        const double v = (draw.coin() ? -1.0 : 1.0) * draw.log_uniform(1e-300, 1e300);
        REQUIRE(parse_double(format_double(v)) == v);
    }
    for (double v : {0.0, -0.0, 1.0, 0.1, std::numeric_limits<double>::denorm_min(),
                     std::numeric_limits<double>::max(), 5715164.906120246}) {
        REQUIRE(parse_double(format_double(v)) == v);
    }
    CHECK_FALSE(parse_double("abc").has_value());
    CHECK_FALSE(parse_double("1.5x").has_value());
    CHECK_FALSE(parse_double("").has_value());
}

TEST_CASE("CSV quoting round-trips", "[csv]") {
    CsvTable t;
    t.header = {"label", "value"};
    t.rows = {{"plain", "1"}, {"with,comma", "2"}, {"with \"quotes\"", "3"}, {"", "4"}};
    std::stringstream ss;
    write_csv(ss, t);
    const auto back = read_csv(ss);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("value") == 1);
    CHECK_THROWS(back.column("missing"));
}

TEST_CASE("sweep table layout", "[csv]") {
    const auto p = testing::single_cavity_params();
    const auto trace = power_sweep(p, {0.0, 4e-5}, 50, SweepDirection::Up);
    const auto table = sweep_table({{"P", trace}}, FreqConvention::Angular);
    CHECK(table.header == std::vector<std::string>{"series", "direction", "control_value", "root1_n", "root2_n",
                                                   "root3_n", "followed_n", "root1_stable", "root2_stable",
                                                   "root3_stable", "chi_sq", "freq_convention"});
    REQUIRE(table.rows.size() == 50);
    const auto c_n2 = table.column("root2_n"), c_f = table.column("followed_n");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& s = trace.samples[i];
        REQUIRE(table.rows[i][c_n2].empty() == (s.roots.size() < 2));
        REQUIRE(parse_double(table.rows[i][c_f]) == *s.followed_n);
        REQUIRE(table.rows[i][table.column("direction")] == "up");
    }
}

TEST_CASE("map table marks non-bistable cells empty", "[csv]") {
    ThresholdMap map;
    map.delta_at_over_gamma = {-1.0, 1.0};
    map.kC_over_omega_m = {0.5};
    map.cells = {3.25e-5, std::nullopt};
    const auto t = map_table(map, FreqConvention::Ordinary);
    REQUIRE(t.rows.size() == 2);
    CHECK(parse_double(t.rows[0][t.column("P_th_watts")]) == 3.25e-5);
    CHECK(t.rows[1][t.column("P_th_watts")].empty());
    CHECK(t.rows[1][t.column("freq_convention")] == "ordinary");
}
