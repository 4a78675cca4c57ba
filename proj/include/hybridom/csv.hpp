#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridom/cooling.hpp"
#include "hybridom/sweep.hpp"

namespace hybridom {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws Validation when absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// Shortest scientific representation that parses back to the same double.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view s);

void write_csv(std::ostream& out, const CsvTable& table);
/// RFC 4180 subset: comma separated, double-quoted fields may hold commas and quotes.
CsvTable read_csv(std::istream& in);

struct LabeledTrace {
    std::string series;
    SweepTrace trace;
};

/// series, direction, control_value, root1_n..root3_n, followed_n,
/// root1_stable..root3_stable, chi_sq, freq_convention. Absent roots are empty cells.
CsvTable sweep_table(const std::vector<LabeledTrace>& traces, FreqConvention convention);

/// delta_at_over_gamma, kC_over_omega_m, P_th_watts (empty when not bistable), freq_convention.
CsvTable map_table(const ThresholdMap& map, FreqConvention convention);

/// t_omega_m, n_b, n_a, n_c, n_d.
CsvTable trajectory_table(const Trajectory& traj);

}  // namespace hybridom
