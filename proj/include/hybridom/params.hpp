#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace hybridom {

namespace constants {
inline constexpr double hbar = 1.0545718e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

/// How bare frequency numbers in a configuration are read: as rad/s, or as Hz
/// (multiplied by 2π on ingestion).
enum class FreqConvention { Angular, Ordinary };

std::string_view to_string(FreqConvention c) noexcept;
std::optional<FreqConvention> parse_freq_convention(std::string_view s) noexcept;

/// System constants in SI units. Every rate and detuning is stored in rad/s,
/// already resolved through the frequency convention recorded in `convention`.
struct PhysicalParams {
    double cavity_length = 0.0;     // m
    double mirror_mass = 0.0;       // kg
    double laser_wavelength = 0.0;  // m
    double mech_freq = 0.0;         // ω_m
    std::optional<double> mech_quality;
    std::optional<double> mech_damping;  // direct γ_m override
    double optical_decay_A = 0.0;   // k_A
    double optical_decay_C = 0.0;   // k_C
    double detuning_A = 0.0;        // Δ_A
    double detuning_C = 0.0;        // Δ_C
    double atom_detuning = 0.0;     // Δ_at
    double atom_decay = 0.0;        // γ_at
    double atom_coupling = 0.0;     // g_at
    double atom_number = 0.0;       // N
    double cavity_coupling = 0.0;   // J
    double input_power = 0.0;       // W
    std::optional<double> laser_freq;   // ω_L, defaults to 2πc/λ
    std::optional<double> cavity_freq;  // ω_A, defaults to ω_L
    FreqConvention convention = FreqConvention::Angular;

    [[nodiscard]] double omega_L() const;
    [[nodiscard]] double omega_A() const;
    /// γ_m from the override when present, otherwise ω_m / Q_mech.
    [[nodiscard]] double gamma_m() const;

    /// Throws InvalidParameter naming the first violated field.
    void validate() const;
};

/// Rates divided by ω_m; photon-number scale carried by coupling_sq = χ².
struct DimensionlessParams {
    double unit_omega = 0.0;  // ω_m in rad/s
    FreqConvention convention = FreqConvention::Angular;

    double gamma_m = 0.0;
    double k_A = 0.0;
    double k_C = 0.0;
    double delta_A = 0.0;
    double delta_C = 0.0;
    double delta_at = 0.0;
    double gamma_at = 0.0;
    double g_at = 0.0;
    double J = 0.0;
    double atom_number = 0.0;
    double omega_L = 0.0;  // in units of ω_m
    double omega_A = 0.0;

    double coupling_sq = 0.0;  // χ²
    double drive_sq = 0.0;     // |ε_A|² / ω_m²

    // Length scales are not rescaled; they ride along so the mapping inverts.
    double cavity_length = 0.0;
    double mirror_mass = 0.0;
    double laser_wavelength = 0.0;
    std::optional<double> mech_quality;
};

DimensionlessParams to_dimensionless(const PhysicalParams& p);
PhysicalParams to_physical(const DimensionlessParams& d);

/// Atomic-feedback-modified decay rate and detuning of the optomechanical cavity.
struct EffectiveCavityResponse {
    double A1 = 0.0;
    double A2 = 0.0;
    double k_new = 0.0;
    double delta_new = 0.0;
    /// False when the feedback term drives k_new ≤ 0; such sets are reported, not rejected.
    bool damped = true;
};

/// χ = (ω_A / (ω_m L)) √(ħ / (m ω_m)).
double scaled_coupling(const PhysicalParams& p);

/// ε_A = √(2 k_A P_in / (ħ ω_L)).
double drive_amplitude(const PhysicalParams& p);

EffectiveCavityResponse effective_response(const PhysicalParams& p);

/// Same algebra in whatever unit system the caller uses for rates.
EffectiveCavityResponse effective_response(double k_A, double delta_A, double J, double g_at,
                                           double atom_number, double k_C, double delta_C,
                                           double gamma_at, double delta_at);

struct AtomicCavityState {
    std::complex<double> c_field;
    std::complex<double> sigma12;
};

/// Mean-field steady state of the feedback cavity and atomic coherence for a
/// given optomechanical-cavity amplitude, atoms pinned to the ground state.
AtomicCavityState atomic_cavity_steady_state(const PhysicalParams& p, std::complex<double> a_field);

}  // namespace hybridom
