#include "hybridom/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace hybridom {

namespace {

using json = nlohmann::json;

struct Issues {
    std::vector<std::string> list;
    void add(const std::string& where, const std::string& what) { list.push_back(where + ": " + what); }
};

std::string join_path(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& section,
                    Issues& issues) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.contains(key)) issues.add(join_path(section, key), "unknown field");
    }
}

std::optional<double> number(const json& v, const std::string& where, Issues& issues) {
    if (!v.is_number()) {
        issues.add(where, "expected a number");
        return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        issues.add(where, "must be finite");
        return std::nullopt;
    }
    return x;
}

// Frequency-valued field: bare number follows the convention, or an explicit
// {"rad_per_s": x}, {"hz": x}, {"times_omega_m": x} object.
std::optional<double> frequency(const json& v, const std::string& where, FreqConvention conv,
                                std::optional<double> omega_m, Issues& issues) {
    if (v.is_number()) {
        const auto x = number(v, where, issues);
        if (!x) return std::nullopt;
        return conv == FreqConvention::Ordinary ? 2.0 * constants::pi * *x : *x;
    }
    if (!v.is_object() || v.size() != 1) {
        issues.add(where, "expected a number or one of {rad_per_s|hz|times_omega_m: number}");
        return std::nullopt;
    }
    const auto& [unit, raw] = *v.items().begin();
    const auto x = number(raw, where + "." + unit, issues);
    if (!x) return std::nullopt;
    if (unit == "rad_per_s") return *x;
    if (unit == "hz") return 2.0 * constants::pi * *x;
    if (unit == "times_omega_m") {
        if (!omega_m) {
            issues.add(where, "times_omega_m needs a valid mech_freq");
            return std::nullopt;
        }
        return *x * *omega_m;
    }
    issues.add(where, "unknown unit '" + unit + "'");
    return std::nullopt;
}

const std::set<std::string> kPhysicalKeys = {
    "cavity_length", "mirror_mass",   "laser_wavelength", "mech_freq",       "mech_quality",
    "mech_damping",  "optical_decay_A", "optical_decay_C", "detuning_A",     "detuning_C",
    "atom_detuning", "atom_decay",    "atom_coupling",    "atom_number",     "cavity_coupling",
    "input_power",   "laser_freq",    "cavity_freq"};

std::optional<PhysicalParams> parse_physical(const json& obj, FreqConvention conv, const std::string& section,
                                             Issues& issues) {
    if (!obj.is_object()) {
        issues.add(section, "expected an object");
        return std::nullopt;
    }
    const std::size_t before = issues.list.size();
    reject_unknown(obj, kPhysicalKeys, section, issues);

    PhysicalParams p;
    p.convention = conv;
    auto plain = [&](const char* key, double& out, bool required) {
        const auto where = join_path(section, key);
        if (!obj.contains(key)) {
            if (required) issues.add(where, "missing required field");
            return;
        }
        if (auto x = number(obj.at(key), where, issues)) out = *x;
    };
    auto freq = [&](const char* key, double& out, bool required, std::optional<double> wm) {
        const auto where = join_path(section, key);
        if (!obj.contains(key)) {
            if (required) issues.add(where, "missing required field");
            return;
        }
        if (auto x = frequency(obj.at(key), where, conv, wm, issues)) out = *x;
    };

    plain("cavity_length", p.cavity_length, true);
    plain("mirror_mass", p.mirror_mass, true);
    plain("laser_wavelength", p.laser_wavelength, true);
    plain("input_power", p.input_power, true);
    plain("atom_number", p.atom_number, false);

    std::optional<double> wm;
    if (obj.contains("mech_freq")) {
        const auto where = join_path(section, "mech_freq");
        if (obj.at("mech_freq").is_object() && obj.at("mech_freq").contains("times_omega_m")) {
            issues.add(where, "cannot be expressed in units of itself");
        } else {
            wm = frequency(obj.at("mech_freq"), where, conv, std::nullopt, issues);
            if (wm && !(*wm > 0.0)) {
                issues.add(where, "must be > 0");
                wm.reset();
            }
        }
        if (wm) p.mech_freq = *wm;
    } else {
        issues.add(join_path(section, "mech_freq"), "missing required field");
    }

    freq("optical_decay_A", p.optical_decay_A, true, wm);
    freq("detuning_A", p.detuning_A, true, wm);
    freq("optical_decay_C", p.optical_decay_C, false, wm);
    freq("detuning_C", p.detuning_C, false, wm);
    freq("atom_detuning", p.atom_detuning, false, wm);
    freq("atom_decay", p.atom_decay, false, wm);
    freq("atom_coupling", p.atom_coupling, false, wm);
    freq("cavity_coupling", p.cavity_coupling, false, wm);

    if (obj.contains("mech_quality")) {
        double q = 0.0;
        plain("mech_quality", q, false);
        p.mech_quality = q;
    }
    if (obj.contains("mech_damping")) {
        double g = 0.0;
        freq("mech_damping", g, false, wm);
        p.mech_damping = g;
    }
    if (obj.contains("laser_freq")) {
        double w = 0.0;
        freq("laser_freq", w, false, wm);
        p.laser_freq = w;
    }
    if (obj.contains("cavity_freq")) {
        double w = 0.0;
        freq("cavity_freq", w, false, wm);
        p.cavity_freq = w;
    }

    if (issues.list.size() != before) return std::nullopt;
    try {
        p.validate();
    } catch (const Error& e) {
        issues.add(section, e.what());
        return std::nullopt;
    }
    return p;
}

std::optional<GridSpec> parse_grid(const json& obj, const std::string& where, bool frequency_valued,
                                   FreqConvention conv, std::optional<double> wm, Issues& issues) {
    if (!obj.is_object()) {
        issues.add(where, "expected {lo, hi, points}");
        return std::nullopt;
    }
    const std::size_t before = issues.list.size();
    reject_unknown(obj, {"lo", "hi", "points"}, where, issues);
    GridSpec g;
    for (const char* key : {"lo", "hi"}) {
        if (!obj.contains(key)) {
            issues.add(where + "." + key, "missing required field");
            continue;
        }
        const auto x = frequency_valued ? frequency(obj.at(key), where + "." + key, conv, wm, issues)
                                        : number(obj.at(key), where + "." + key, issues);
        if (x) (std::string_view(key) == "lo" ? g.range.lo : g.range.hi) = *x;
    }
    if (!obj.contains("points") || !obj.at("points").is_number_integer() || obj.at("points").get<long long>() < 2) {
        issues.add(where + ".points", "expected an integer >= 2");
    } else {
        g.points = obj.at("points").get<std::size_t>();
    }
    if (issues.list.size() != before) return std::nullopt;
    if (!(g.range.hi > g.range.lo)) {
        issues.add(where, "hi must exceed lo");
        return std::nullopt;
    }
    return g;
}

std::optional<std::vector<double>> parse_axis(const json& v, const std::string& where, Issues& issues) {
    if (v.is_array()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (auto x = number(v[i], where + "[" + std::to_string(i) + "]", issues)) out.push_back(*x);
        }
        if (out.empty()) issues.add(where, "must not be empty");
        if (out.size() != v.size() || out.empty()) return std::nullopt;
        return out;
    }
    const auto g = parse_grid(v, where, false, FreqConvention::Angular, std::nullopt, issues);
    if (!g) return std::nullopt;
    return linspace(g->range.lo, g->range.hi, g->points);
}

const std::set<std::string> kLinearizedKeys = {
    "detuning",        "detuning_C",  "atom_detuning", "mech_freq",     "optical_decay_A",
    "optical_decay_C", "atom_decay",  "mech_damping",  "atom_coupling", "cavity_coupling",
    "om_coupling",     "thermal_occupation", "detuning_convention", "decay_convention"};

std::optional<LinearizedParams> parse_linearized(const json& obj, Issues& issues) {
    const std::string section = "linearized";
    if (!obj.is_object()) {
        issues.add(section, "expected an object");
        return std::nullopt;
    }
    const std::size_t before = issues.list.size();
    reject_unknown(obj, kLinearizedKeys, section, issues);
    LinearizedParams p;
    auto field = [&](const char* key, double& out, bool required) {
        const auto where = join_path(section, key);
        if (!obj.contains(key)) {
            if (required) issues.add(where, "missing required field");
            return;
        }
        if (auto x = number(obj.at(key), where, issues)) out = *x;
    };
    field("detuning", p.detuning, true);
    field("detuning_C", p.detuning_C, true);
    field("atom_detuning", p.atom_detuning, true);
    field("mech_freq", p.mech_freq, false);
    field("optical_decay_A", p.optical_decay_A, true);
    field("optical_decay_C", p.optical_decay_C, true);
    field("atom_decay", p.atom_decay, true);
    field("mech_damping", p.mech_damping, true);
    field("atom_coupling", p.atom_coupling, true);
    field("cavity_coupling", p.cavity_coupling, true);
    field("om_coupling", p.om_coupling, true);
    field("thermal_occupation", p.thermal_occupation, true);
    if (obj.contains("detuning_convention")) {
        const auto& v = obj.at("detuning_convention");
        const auto c = v.is_string() ? parse_detuning_convention(v.get<std::string>()) : std::nullopt;
        if (c) {
            p.detuning_convention = *c;
        } else {
            issues.add(section + ".detuning_convention", "expected cavity_minus_laser or laser_minus_cavity");
        }
    }
    if (obj.contains("decay_convention")) {
        const auto& v = obj.at("decay_convention");
        const auto c = v.is_string() ? parse_decay_convention(v.get<std::string>()) : std::nullopt;
        if (c) {
            p.decay_convention = *c;
        } else {
            issues.add(section + ".decay_convention", "expected amplitude or master_equation");
        }
    }
    if (issues.list.size() != before) return std::nullopt;
    try {
        p.validate();
    } catch (const Error& e) {
        issues.add(section, e.what());
        return std::nullopt;
    }
    return p;
}

void parse_evolution(const json& obj, EvolutionSpec& ev, Issues& issues) {
    const std::string section = "evolution";
    if (!obj.is_object()) {
        issues.add(section, "expected an object");
        return;
    }
    reject_unknown(obj, {"t_final", "samples", "initial_phonons", "rtol", "atol"}, section, issues);
    auto positive = [&](const char* key) -> std::optional<double> {
        if (!obj.contains(key)) return std::nullopt;
        const auto x = number(obj.at(key), section + "." + key, issues);
        if (x && !(*x > 0.0)) {
            issues.add(section + "." + key, "must be > 0");
            return std::nullopt;
        }
        return x;
    };
    if (auto x = positive("t_final")) ev.t_final = *x;
    if (auto x = positive("rtol")) ev.rtol = *x;
    if (auto x = positive("atol")) ev.atol = *x;
    if (obj.contains("initial_phonons")) {
        const auto x = number(obj.at("initial_phonons"), section + ".initial_phonons", issues);
        if (x && *x < 0.0) issues.add(section + ".initial_phonons", "must be >= 0");
        if (x && *x >= 0.0) ev.initial_phonons = *x;
    }
    if (obj.contains("samples")) {
        const auto& v = obj.at("samples");
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            issues.add(section + ".samples", "expected an integer >= 1");
        } else {
            ev.samples = v.get<std::size_t>();
        }
    }
}

void parse_sweep(const json& obj, const json* physical_doc, FreqConvention conv,
                 const std::optional<PhysicalParams>& base, RunConfig& cfg, Issues& issues) {
    const std::string section = "sweep";
    if (!obj.is_object()) {
        issues.add(section, "expected an object");
        return;
    }
    reject_unknown(obj, {"detuning_A", "power", "series"}, section, issues);
    SweepSpec spec;
    std::optional<double> wm;
    if (base) wm = base->mech_freq;
    if (obj.contains("detuning_A")) spec.detuning_A = parse_grid(obj.at("detuning_A"), "sweep.detuning_A", true, conv, wm, issues);
    if (obj.contains("power")) {
        spec.power = parse_grid(obj.at("power"), "sweep.power", false, conv, wm, issues);
        if (spec.power && spec.power->range.lo < 0.0) issues.add("sweep.power.lo", "must be >= 0");
    }
    if (obj.contains("series")) {
        const auto& arr = obj.at("series");
        if (!arr.is_array() || arr.empty()) {
            issues.add("sweep.series", "expected a non-empty array");
        } else if (physical_doc == nullptr) {
            issues.add("sweep.series", "needs a physical section to override");
        } else {
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string where = "sweep.series[" + std::to_string(i) + "]";
                const auto& entry = arr[i];
                if (!entry.is_object() || !entry.contains("label") || !entry.at("label").is_string()) {
                    issues.add(where, "expected an object with a string label");
                    continue;
                }
                json merged = *physical_doc;
                for (const auto& [key, value] : entry.items()) {
                    if (key != "label") merged[key] = value;
                }
                if (auto p = parse_physical(merged, conv, where, issues)) {
                    spec.series.push_back({entry.at("label").get<std::string>(), *p});
                }
            }
        }
    } else if (base) {
        spec.series.push_back({"base", *base});
    }
    cfg.sweep = std::move(spec);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : Error(ErrorKind::Validation,
            [&] {
                std::string msg = "invalid configuration";
                for (const auto& s : issues) msg += "\n  " + s;
                return msg;
            }()),
      issues_(std::move(issues)) {}

MapSpec default_map_spec() {
    return MapSpec{linspace(-100.0, 20.0, 121), linspace(0.01, 1.0, 100)};
}

RunConfig parse_config(std::string_view json_text, std::optional<FreqConvention> convention_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        // overflowing literals surface as out_of_range rather than parse_error
        throw ConfigError({std::string("document: malformed JSON (") + e.what() + ")"});
    }
    if (!doc.is_object()) throw ConfigError({"document: expected a JSON object"});

    Issues issues;
    reject_unknown(doc, {"description", "freq_convention", "physical", "sweep", "threshold_map", "linearized", "evolution"},
                   "", issues);

    RunConfig cfg;
    if (doc.contains("freq_convention")) {
        const auto& v = doc.at("freq_convention");
        const auto c = v.is_string() ? parse_freq_convention(v.get<std::string>()) : std::nullopt;
        if (c) {
            cfg.convention = *c;
        } else {
            issues.add("freq_convention", "expected angular or ordinary");
        }
    }
    if (convention_override) cfg.convention = *convention_override;

    const json* physical_doc = doc.contains("physical") ? &doc.at("physical") : nullptr;
    if (physical_doc) cfg.physical = parse_physical(*physical_doc, cfg.convention, "physical", issues);
    if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), physical_doc, cfg.convention, cfg.physical, cfg, issues);
    if (doc.contains("threshold_map")) {
        const auto& m = doc.at("threshold_map");
        if (!m.is_object()) {
            issues.add("threshold_map", "expected an object");
        } else {
            reject_unknown(m, {"delta_at_over_gamma", "kC_over_omega_m"}, "threshold_map", issues);
            MapSpec spec = default_map_spec();
            if (m.contains("delta_at_over_gamma")) {
                if (auto a = parse_axis(m.at("delta_at_over_gamma"), "threshold_map.delta_at_over_gamma", issues)) {
                    spec.delta_at_over_gamma = *a;
                }
            }
            if (m.contains("kC_over_omega_m")) {
                if (auto a = parse_axis(m.at("kC_over_omega_m"), "threshold_map.kC_over_omega_m", issues)) {
                    spec.kC_over_omega_m = *a;
                }
            }
            cfg.threshold_map = spec;
        }
    }
    if (doc.contains("linearized")) cfg.linearized = parse_linearized(doc.at("linearized"), issues);
    if (doc.contains("evolution")) parse_evolution(doc.at("evolution"), cfg.evolution, issues);

    if (!issues.list.empty()) throw ConfigError(std::move(issues.list));
    return cfg;
}

RunConfig load_config(const std::string& path, std::optional<FreqConvention> convention_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), convention_override);
}

LinearizedParams single_cavity_variant(const LinearizedParams& hybrid) {
    LinearizedParams p = hybrid;
    p.cavity_coupling = 0.0;
    p.om_coupling = 0.1 * hybrid.mech_freq;
    return p;
}

}  // namespace hybridom
