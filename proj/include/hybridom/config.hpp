#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridom/cooling.hpp"
#include "hybridom/error.hpp"
#include "hybridom/params.hpp"
#include "hybridom/sweep.hpp"

namespace hybridom {

/// Validation failure carrying one message per offending field.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues);

    [[nodiscard]] const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

struct SeriesSpec {
    std::string label;
    PhysicalParams params;
};

struct GridSpec {
    Range range;
    std::size_t points = 0;
};

struct SweepSpec {
    std::optional<GridSpec> detuning_A;  // rad/s after convention handling
    std::optional<GridSpec> power;       // W
    std::vector<SeriesSpec> series;      // base parameters when not given
};

struct MapSpec {
    std::vector<double> delta_at_over_gamma;
    std::vector<double> kC_over_omega_m;
};

/// Δ_at/γ_at ∈ [−100, 20] (121 points), k_C/ω_m ∈ [0.01, 1] (100 points).
MapSpec default_map_spec();

struct EvolutionSpec {
    std::optional<double> t_final;  // 1/ω_m; defaults to 50/γ_eff
    std::size_t samples = 200;
    std::optional<double> initial_phonons;  // defaults to thermal_occupation
    double rtol = 1e-8;
    double atol = 1e-8;
};

struct RunConfig {
    FreqConvention convention = FreqConvention::Angular;
    std::optional<PhysicalParams> physical;
    std::optional<SweepSpec> sweep;
    std::optional<MapSpec> threshold_map;
    std::optional<LinearizedParams> linearized;
    EvolutionSpec evolution;
};

/// Parses a JSON configuration document. `convention_override` wins over the
/// document's own "freq_convention". Throws ConfigError listing every problem.
RunConfig parse_config(std::string_view json_text, std::optional<FreqConvention> convention_override = {});

RunConfig load_config(const std::string& path, std::optional<FreqConvention> convention_override = {});

/// Names accepted by preset_document.
std::vector<std::string_view> preset_names();

/// JSON configuration text a preset expands to. Throws ConfigError for unknown names.
std::string preset_document(std::string_view name);

/// Single-cavity comparison run: feedback cavity detached (J = 0), G = 0.1 ω_m.
LinearizedParams single_cavity_variant(const LinearizedParams& hybrid);

}  // namespace hybridom
