// Command-line front end: config ingestion, subcommand dispatch, CSV/JSON output.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "hybridom/bistability.hpp"
#include "hybridom/config.hpp"
#include "hybridom/cooling.hpp"
#include "hybridom/csv.hpp"
#include "hybridom/sweep.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hybridom;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParameter:
        case ErrorKind::Validation: return kExitValidation;
        default: return kExitNumerical;
    }
}

void report_error(std::string_view kind, int code, const std::string& message,
                  const std::vector<std::string>& issues = {}) {
    json err;
    err["error"]["kind"] = kind;
    err["error"]["exit_code"] = code;
    err["error"]["message"] = message;
    if (!issues.empty()) err["error"]["issues"] = issues;
    std::cerr << err.dump() << '\n';
}

struct Globals {
    std::string config_path;
    std::string preset;
    std::string freq_convention;
    std::string out_path;
};

struct CoolFlags {
    std::optional<double> t_final;
    std::optional<std::size_t> samples;
    bool single_cavity = false;
    bool steady_state = false;
};

RunConfig load(const Globals& g) {
    std::optional<FreqConvention> conv;
    if (!g.freq_convention.empty()) {
        conv = parse_freq_convention(g.freq_convention);
        if (!conv) throw ConfigError({"--freq-convention: expected angular or ordinary"});
    }
    if (g.config_path.empty() == g.preset.empty()) {
        throw ConfigError({"input: give exactly one of --config or --preset"});
    }
    if (!g.preset.empty()) return parse_config(preset_document(g.preset), conv);
    return load_config(g.config_path, conv);
}

const PhysicalParams& need_physical(const RunConfig& cfg) {
    if (!cfg.physical) throw ConfigError({"physical: missing required section"});
    return *cfg.physical;
}

const LinearizedParams& need_linearized(const RunConfig& cfg) {
    if (!cfg.linearized) throw ConfigError({"linearized: missing required section"});
    return *cfg.linearized;
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const Globals& g, Fn&& write) {
    if (g.out_path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw ConfigError({"--out: cannot open '" + g.out_path + "' for writing"});
    write(out);
    if (!out) throw Error(ErrorKind::Validation, "--out: write to '" + g.out_path + "' failed");
}

void emit_json(const Globals& g, const json& doc) {
    emit(g, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json root_json(const PhysicalParams& p, double chi, const SteadyStateRoot& r) {
    json j;
    j["n"] = r.n;
    j["chi_Q"] = chi * chi * r.n;
    j["stability"] = r.stability == Stability::Stable ? "stable" : "unstable";
    j["a_field"] = complex_json(r.a_field);
    j["Q"] = r.Q;
    j["P"] = r.P;
    j["residual"] = r.residual;
    j["slope"] = r.slope;
    const auto atoms = atomic_cavity_steady_state(p, r.a_field);
    j["c_field"] = complex_json(atoms.c_field);
    j["sigma12"] = complex_json(atoms.sigma12);
    return j;
}

json spectrum_json(const LinearizedSystem& sys) {
    json arr = json::array();
    for (const auto& z : stability_spectrum(sys)) arr.push_back(complex_json(z));
    return arr;
}

int cmd_derive(const Globals& g) {
    const auto cfg = load(g);
    json doc;
    doc["freq_convention"] = to_string(cfg.convention);
    if (cfg.physical) {
        const auto& p = *cfg.physical;
        const auto resp = effective_response(p);
        const auto d = to_dimensionless(p);
        json& j = doc["physical"];
        j["omega_L"] = p.omega_L();
        j["omega_A"] = p.omega_A();
        j["mech_freq"] = p.mech_freq;
        j["gamma_m"] = p.gamma_m();
        j["chi"] = scaled_coupling(p);
        j["drive_amplitude"] = drive_amplitude(p);
        j["effective_response"] = {{"A1", resp.A1},
                                   {"A2", resp.A2},
                                   {"k_new", resp.k_new},
                                   {"delta_new", resp.delta_new},
                                   {"damped", resp.damped}};
        j["bistability_discriminant"] = bistability_discriminant(resp);
        j["is_bistable"] = is_bistable(resp);
        j["dimensionless"] = {{"unit_omega", d.unit_omega}, {"gamma_m", d.gamma_m},   {"k_A", d.k_A},
                              {"k_C", d.k_C},               {"delta_A", d.delta_A},   {"delta_C", d.delta_C},
                              {"delta_at", d.delta_at},     {"gamma_at", d.gamma_at}, {"g_at", d.g_at},
                              {"J", d.J},                   {"atom_number", d.atom_number},
                              {"omega_L", d.omega_L},       {"omega_A", d.omega_A},
                              {"coupling_sq", d.coupling_sq}, {"drive_sq", d.drive_sq}};
    }
    if (cfg.linearized) {
        const auto sys = build_linearized_system(*cfg.linearized);
        const double abscissa = spectral_abscissa(sys);
        json& j = doc["linearized"];
        j["detuning_convention"] = to_string(cfg.linearized->detuning_convention);
        j["decay_convention"] = to_string(cfg.linearized->decay_convention);
        j["spectral_abscissa"] = abscissa;
        j["gamma_eff"] = 2.0 * std::abs(abscissa);
        j["spectrum"] = spectrum_json(sys);
    }
    if (!cfg.physical && !cfg.linearized) throw ConfigError({"document: needs a physical or linearized section"});
    emit_json(g, doc);
    return 0;
}

int cmd_steady_state(const Globals& g) {
    const auto cfg = load(g);
    const auto& p = need_physical(cfg);
    const auto resp = effective_response(p);
    const double chi = scaled_coupling(p);
    const auto sol = steady_state_roots(resp, chi, p.mech_freq, drive_amplitude(p));
    json doc;
    doc["freq_convention"] = to_string(cfg.convention);
    doc["input_power"] = p.input_power;
    doc["k_new"] = resp.k_new;
    doc["delta_new"] = resp.delta_new;
    doc["roots"] = json::array();
    for (const auto& r : sol.roots) doc["roots"].push_back(root_json(p, chi, r));
    emit_json(g, doc);
    return 0;
}

int cmd_threshold(const Globals& g) {
    const auto cfg = load(g);
    const auto& p = need_physical(cfg);
    const auto th = threshold_power(p);
    const auto w = bistable_window(p);
    json doc;
    doc["freq_convention"] = to_string(cfg.convention);
    doc["P_th"] = th.power;
    doc["n_th"] = th.photons;
    doc["window"] = {{"P_low", w.P_low}, {"P_high", w.P_high}, {"n_at_low", w.n_at_low}, {"n_at_high", w.n_at_high}};
    emit_json(g, doc);
    return 0;
}

const SweepSpec& need_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError({"sweep: missing required section"});
    return *cfg.sweep;
}

int cmd_sweep_detuning(const Globals& g) {
    const auto cfg = load(g);
    need_physical(cfg);
    const auto& spec = need_sweep(cfg);
    if (!spec.detuning_A) throw ConfigError({"sweep.detuning_A: missing required field"});
    std::vector<LabeledTrace> traces;
    for (const auto& s : spec.series) {
        traces.push_back({s.label, detuning_sweep(s.params, spec.detuning_A->range, spec.detuning_A->points)});
    }
    const auto table = sweep_table(traces, cfg.convention);
    emit(g, [&](std::ostream& os) { write_csv(os, table); });
    return 0;
}

int cmd_sweep_power(const Globals& g) {
    const auto cfg = load(g);
    need_physical(cfg);
    const auto& spec = need_sweep(cfg);
    if (!spec.power) throw ConfigError({"sweep.power: missing required field"});
    std::vector<LabeledTrace> traces;
    json summary;
    summary["freq_convention"] = to_string(cfg.convention);
    summary["jumps"] = json::array();
    for (const auto& s : spec.series) {
        for (auto dir : {SweepDirection::Up, SweepDirection::Down}) {
            auto trace = power_sweep(s.params, spec.power->range, spec.power->points, dir);
            for (const auto& jmp : trace.jumps) {
                summary["jumps"].push_back({{"series", s.label},
                                            {"direction", to_string(dir)},
                                            {"power", jmp.control_value},
                                            {"from_n", jmp.from_n},
                                            {"to_n", jmp.to_n}});
            }
            traces.push_back({s.label, std::move(trace)});
        }
    }
    const auto table = sweep_table(traces, cfg.convention);
    emit(g, [&](std::ostream& os) { write_csv(os, table); });
    // the CSV owns stdout unless it went to a file
    if (!g.out_path.empty()) std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_threshold_map(const Globals& g) {
    const auto cfg = load(g);
    const auto& p = need_physical(cfg);
    const auto spec = cfg.threshold_map ? *cfg.threshold_map : default_map_spec();
    const auto map = threshold_map(p, spec.delta_at_over_gamma, spec.kC_over_omega_m);
    const auto table = map_table(map, cfg.convention);
    emit(g, [&](std::ostream& os) { write_csv(os, table); });
    return 0;
}

int cmd_cool(const Globals& g, const CoolFlags& flags) {
    const auto cfg = load(g);
    const auto& hybrid = need_linearized(cfg);
    const auto params = flags.single_cavity ? single_cavity_variant(hybrid) : hybrid;
    const auto sys = build_linearized_system(params);

    if (flags.steady_state) {
        const auto ss = steady_state_moments(sys);
        json doc;
        doc["n_b"] = ss.occupancy(Mode::Mechanical);
        doc["n_a"] = ss.occupancy(Mode::Optical);
        doc["n_c"] = ss.occupancy(Mode::Feedback);
        doc["n_d"] = ss.occupancy(Mode::Atomic);
        doc["spectral_abscissa"] = spectral_abscissa(sys);
        emit_json(g, doc);
        return 0;
    }

    double t_final = 0.0;
    if (flags.t_final) {
        t_final = *flags.t_final;
    } else if (cfg.evolution.t_final) {
        t_final = *cfg.evolution.t_final;
    } else {
        // the comparison run shares the configured system's window
        const double abscissa = spectral_abscissa(build_linearized_system(hybrid));
        if (!(abscissa < 0.0)) {
            throw ConfigError({"evolution.t_final: required when the drift matrix is not stable"});
        }
        t_final = 50.0 / (2.0 * std::abs(abscissa));
    }
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError({"--t-final: must be > 0"});
    const std::size_t samples = flags.samples.value_or(cfg.evolution.samples);
    if (samples < 1) throw ConfigError({"--samples: must be >= 1"});

    const double n0 = cfg.evolution.initial_phonons.value_or(params.thermal_occupation);
    EvolveOptions opt;
    opt.sample_interval = t_final / static_cast<double>(samples);
    opt.integrator.rtol = cfg.evolution.rtol;
    opt.integrator.atol = cfg.evolution.atol;
    const auto traj = evolve_moments(sys, MomentState::from_occupations({0.0, n0, 0.0, 0.0}), t_final, opt);
    const auto table = trajectory_table(traj);
    emit(g, [&](std::ostream& os) { write_csv(os, table); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid optomechanics: bistability sweeps and cooling dynamics"};
    app.require_subcommand(1);
    Globals g;
    CoolFlags cool;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--preset", g.preset, "Built-in configuration: fig2a, fig2b, fig3a, fig3b, fig4, fig5");
    app.add_option("--freq-convention", g.freq_convention, "How bare frequency numbers are read: angular|ordinary");
    app.add_option("--out", g.out_path, "Output file (stdout when omitted)");

    auto* derive = app.add_subcommand("derive", "Print derived quantities as JSON");
    auto* steady = app.add_subcommand("steady-state", "Print steady-state roots as JSON");
    auto* threshold = app.add_subcommand("threshold", "Print threshold power and bistable window as JSON");
    auto* sweep_det = app.add_subcommand("sweep-detuning", "CSV of roots over the detuning grid");
    auto* sweep_pow = app.add_subcommand("sweep-power", "CSV of up/down hysteresis sweeps over power");
    auto* tmap = app.add_subcommand("threshold-map", "CSV of threshold power over the (delta_at, k_C) grid");
    auto* cool_cmd = app.add_subcommand("cool", "CSV of mode occupancies over time");
    cool_cmd->add_option("--t-final", cool.t_final, "End time in units of 1/omega_m");
    cool_cmd->add_option("--samples", cool.samples, "Number of sample intervals");
    cool_cmd->add_flag("--single-cavity", cool.single_cavity, "Detach the feedback cavity (J = 0, G = 0.1 omega_m)");
    cool_cmd->add_flag("--steady-state", cool.steady_state, "Print the Lyapunov steady state as JSON");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", kExitValidation, e.what());
        return kExitValidation;
    }

    try {
        if (derive->parsed()) return cmd_derive(g);
        if (steady->parsed()) return cmd_steady_state(g);
        if (threshold->parsed()) return cmd_threshold(g);
        if (sweep_det->parsed()) return cmd_sweep_detuning(g);
        if (sweep_pow->parsed()) return cmd_sweep_power(g);
        if (tmap->parsed()) return cmd_threshold_map(g);
        if (cool_cmd->parsed()) return cmd_cool(g, cool);
    } catch (const ConfigError& e) {
        report_error(to_string(e.kind()), kExitValidation, "invalid configuration", e.issues());
        return kExitValidation;
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        report_error(to_string(e.kind()), code, e.what());
        return code;
    } catch (const std::exception& e) {
        report_error("internal", kExitNumerical, e.what());
        return kExitNumerical;
    }
    return kExitValidation;
}
