#include <array>
#include <string>

#include "hybridom/config.hpp"

namespace hybridom {

namespace {

// Bare numbers in mech_freq follow --freq-convention; everything quoted as a
// multiple of ω_m or with an explicit 2π uses the unit-tagged forms.
constexpr const char* kSingleCavity = R"(
    "cavity_length": 1e-3,
    "mirror_mass": 1e-11,
    "laser_wavelength": 794.98e-9,
    "mech_freq": 1e7,
    "mech_quality": 1e7,
    "optical_decay_A": {"times_omega_m": 0.1},
    "detuning_A": {"times_omega_m": 1})";

constexpr const char* kFeedback = R"(,
    "cavity_coupling": {"times_omega_m": 1},
    "atom_coupling": {"hz": 1e3},
    "optical_decay_C": {"times_omega_m": 0.1},
    "atom_number": 1e8,
    "atom_decay": {"hz": 2.875e6},
    "detuning_C": {"times_omega_m": 1},
    "atom_detuning": 0)";

// Δ_at/γ_at ∈ {−40, −20, 0, 10}, written as Hz multiples of γ_at/2π = 2.875 MHz.
constexpr const char* kAtomDetuningSeries = R"("series": [
      {"label": "delta_at=-40gamma_at", "atom_detuning": {"hz": -1.15e8}},
      {"label": "delta_at=-20gamma_at", "atom_detuning": {"hz": -5.75e7}},
      {"label": "delta_at=0", "atom_detuning": {"hz": 0}},
      {"label": "delta_at=10gamma_at", "atom_detuning": {"hz": 2.875e7}}
    ])";

constexpr const char* kDetuningGrid = R"("detuning_A": {"lo": {"times_omega_m": 0}, "hi": {"times_omega_m": 2}, "points": 801})";
constexpr const char* kPowerGrid = R"("power": {"lo": 0, "hi": 4e-5, "points": 2000})";
// wide enough for the upper fold of the Δ_at = 10γ_at series (≈ 195 μW)
constexpr const char* kFeedbackPowerGrid = R"("power": {"lo": 0, "hi": 2.5e-4, "points": 5000})";

std::string physical(const char* body, const char* input_power) {
    return std::string(R"("physical": {)") + body + R"(,
    "input_power": )" + input_power + "\n  }";
}

std::string document(const std::string& description, const std::string& sections) {
    return "{\n  \"description\": \"" + description + "\",\n  " + sections + "\n}\n";
}

std::string fig2a() {
    return document("Detuning sweep of the bare optomechanical cavity at three drive powers",
                    physical(kSingleCavity, "7e-6") + R"(,
  "sweep": {
    )" + kDetuningGrid + R"(,
    "series": [
      {"label": "P=0.3uW", "input_power": 3e-7},
      {"label": "P=3uW", "input_power": 3e-6},
      {"label": "P=7uW", "input_power": 7e-6}
    ]
  })");
}

std::string fig2b() {
    return document("Power hysteresis of the bare optomechanical cavity at detuning omega_m",
                    physical(kSingleCavity, "7e-6") + R"(,
  "sweep": {
    )" + kPowerGrid + R"(
  })");
}

std::string fig3a() {
    return document("Detuning sweep with atomic feedback at 20 uW for several atomic detunings",
                    physical((std::string(kSingleCavity) + kFeedback).c_str(), "2e-5") + R"(,
  "sweep": {
    )" + kDetuningGrid + R"(,
    )" + kAtomDetuningSeries + R"(
  })");
}

std::string fig3b() {
    return document("Power hysteresis with atomic feedback for several atomic detunings",
                    physical((std::string(kSingleCavity) + kFeedback).c_str(), "2e-5") + R"(,
  "sweep": {
    )" + kFeedbackPowerGrid + R"(,
    )" + kAtomDetuningSeries + R"(
  })");
}

std::string fig4() {
    return document("Threshold power over atomic detuning and feedback-cavity decay",
                    physical((std::string(kSingleCavity) + kFeedback).c_str(), "2e-5") + R"(,
  "threshold_map": {
    "delta_at_over_gamma": {"lo": -100, "hi": 20, "points": 121},
    "kC_over_omega_m": {"lo": 0.01, "hi": 1, "points": 100}
  })");
}

std::string fig5() {
    return document("Phonon number evolution of the hybrid system, rates in units of omega_m",
                    R"("linearized": {
    "detuning": 1,
    "detuning_C": 1,
    "atom_detuning": 100,
    "mech_freq": 1,
    "optical_decay_A": 100,
    "optical_decay_C": 1,
    "atom_decay": 1000,
    "mech_damping": 1e-5,
    "atom_coupling": 0.1,
    "cavity_coupling": 200,
    "om_coupling": 50,
    "thermal_occupation": 1e4,
    "detuning_convention": "laser_minus_cavity",
    "decay_convention": "amplitude"
  },
  "evolution": {
    "samples": 400,
    "initial_phonons": 1e4
  })");
}

struct Preset {
    std::string_view name;
    std::string (*build)();
};

constexpr std::array<Preset, 6> kPresets = {{{"fig2a", fig2a},
                                             {"fig2b", fig2b},
                                             {"fig3a", fig3a},
                                             {"fig3b", fig3b},
                                             {"fig4", fig4},
                                             {"fig5", fig5}}};

}  // namespace

std::vector<std::string_view> preset_names() {
    std::vector<std::string_view> out;
    for (const auto& p : kPresets) out.push_back(p.name);
    return out;
}

std::string preset_document(std::string_view name) {
    for (const auto& p : kPresets) {
        if (p.name == name) return p.build();
    }
    std::string known;
    for (const auto& p : kPresets) known += (known.empty() ? "" : ", ") + std::string(p.name);
    throw ConfigError({"preset: unknown name '" + std::string(name) + "' (known: " + known + ")"});
}

}  // namespace hybridom
