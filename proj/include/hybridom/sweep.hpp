#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridom/bistability.hpp"
#include "hybridom/params.hpp"

namespace hybridom {

enum class SweepDirection { None, Up, Down };

std::string_view to_string(SweepDirection d) noexcept;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct RootSample {
    double n = 0.0;
    Stability stability = Stability::Stable;
};

struct SweepSample {
    double control_value = 0.0;
    std::vector<RootSample> roots;   // ascending in n
    std::optional<double> followed_n;  // set by power sweeps only
};

struct JumpEvent {
    double control_value = 0.0;  // bisection-refined fold location
    double from_n = 0.0;
    double to_n = 0.0;
};

struct SweepTrace {
    std::string control_name;  // "detuning_A" or "power"
    SweepDirection direction = SweepDirection::None;
    double chi = 0.0;          // χQ_S = χ² n for plotting
    std::vector<SweepSample> samples;  // in traversal order
    std::vector<JumpEvent> jumps;
};

/// Cells are row-major: one row per Δ_at value, one column per k_C value.
struct ThresholdMap {
    std::vector<double> delta_at_over_gamma;
    std::vector<double> kC_over_omega_m;
    std::vector<std::optional<double>> cells;  // P_th in W, empty when not bistable

    [[nodiscard]] const std::optional<double>& at(std::size_t i_delta, std::size_t j_kc) const {
        return cells[i_delta * kC_over_omega_m.size() + j_kc];
    }
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Every real root at each Δ_A sample; no branch following.
SweepTrace detuning_sweep(const PhysicalParams& p, Range detuning_A, std::size_t n_points);

/// Quasi-static hysteresis sweep over input power with branch continuation.
/// Up-sweeps start on the lowest root and traverse increasing power; down-sweeps
/// start on the highest root and traverse decreasing power.
SweepTrace power_sweep(const PhysicalParams& p, Range power, std::size_t n_points, SweepDirection direction);

/// Per-cell threshold power, each cell evaluated independently.
ThresholdMap threshold_map(const PhysicalParams& p, std::span<const double> delta_at_over_gamma,
                           std::span<const double> kC_over_omega_m);

}  // namespace hybridom
