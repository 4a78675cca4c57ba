#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "hybridom/lyapunov_ode.hpp"

namespace hybridom {

/// Mode order inside v = (a, b, c, d, a†, b†, c†, d†).
enum class Mode : int { Optical = 0, Mechanical = 1, Feedback = 2, Atomic = 3 };

enum class DetuningConvention { CavityMinusLaser, LaserMinusCavity };
enum class DecayConvention { Amplitude, MasterEquation };

std::string_view to_string(DetuningConvention c) noexcept;
std::string_view to_string(DecayConvention c) noexcept;
std::optional<DetuningConvention> parse_detuning_convention(std::string_view s) noexcept;
std::optional<DecayConvention> parse_decay_convention(std::string_view s) noexcept;

/// Linearized four-mode parameters. Any consistent unit works; the CLI
/// uses units of ω_m so time comes out in 1/ω_m.
struct LinearizedParams {
    double detuning = 0.0;     // Δ
    double detuning_C = 0.0;   // Δ_C
    double atom_detuning = 0.0;  // Δ_at
    double mech_freq = 1.0;    // ω_m
    double optical_decay_A = 0.0;
    double optical_decay_C = 0.0;
    double atom_decay = 0.0;
    double mech_damping = 0.0;  // γ_m
    double atom_coupling = 0.0;  // g_at
    double cavity_coupling = 0.0;  // J
    double om_coupling = 0.0;    // G
    double thermal_occupation = 0.0;  // n_th
    DetuningConvention detuning_convention = DetuningConvention::CavityMinusLaser;
    DecayConvention decay_convention = DecayConvention::Amplitude;

    void validate() const;
};

struct LinearizedSystem {
    Matrix8cd drift;      // M
    Matrix8cd diffusion;  // D
};

/// Second moments C = ⟨v v†⟩; first moments vanish for linearized fluctuations.
struct MomentState {
    double t = 0.0;
    Matrix8cd second = Matrix8cd::Identity();

    /// ⟨o_i† o_j⟩
    [[nodiscard]] std::complex<double> normal(Mode i, Mode j) const;
    /// ⟨o_i o_j⟩
    [[nodiscard]] std::complex<double> anomalous(Mode i, Mode j) const;
    [[nodiscard]] double occupancy(Mode m) const;
    /// max |⟨o_i†o_j⟩ − conj(⟨o_j†o_i⟩)| over the full matrix
    [[nodiscard]] double hermiticity_defect() const;

    /// Diagonal state with the given ⟨o†o⟩ and no correlations.
    static MomentState from_occupations(const std::array<double, 4>& n);
    /// normal(i,j) = ⟨o_i†o_j⟩, anomalous(i,j) = ⟨o_i o_j⟩ (symmetric).
    static MomentState from_moments(const Eigen::Matrix4cd& normal, const Eigen::Matrix4cd& anomalous);
};

LinearizedSystem build_linearized_system(const LinearizedParams& p);

/// Eigenvalues of M, sorted by real part descending.
std::vector<std::complex<double>> stability_spectrum(const LinearizedSystem& sys);
double spectral_abscissa(const LinearizedSystem& sys);

struct EvolveOptions {
    double sample_interval = 0.0;  // 0: only the final state
    IntegratorOptions integrator;
};

struct Trajectory {
    std::vector<MomentState> samples;
    double nb_error_estimate = 0.0;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Integrates dC/dt = M C + C M† + D from init.t to t_final. Samples land on
/// init.t + k·sample_interval and always include both endpoints.
Trajectory evolve_moments(const LinearizedSystem& sys, const MomentState& init, double t_final,
                          const EvolveOptions& options);

/// Solves M C + C M† + D = 0. Throws NoSteadyState when M is not strictly stable.
MomentState steady_state_moments(const LinearizedSystem& sys);

}  // namespace hybridom
