#include "hybridom/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "hybridom/error.hpp"

namespace hybridom {

namespace {

bool needs_quotes(std::string_view s) { return s.find_first_of(",\"\n\r") != std::string_view::npos; }

void write_field(std::ostream& out, std::string_view s) {
    if (!needs_quotes(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char ch : s) {
        if (ch == '"') out << '"';
        out << ch;
    }
    out << '"';
}

std::string stable_flag(Stability s) { return s == Stability::Stable ? "1" : "0"; }

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(ErrorKind::Validation, "csv: no column named '" + std::string(name) + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            write_field(out, fields[i]);
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

CsvTable read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    char ch = 0;
    while (in.get(ch)) {
        any = true;
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            record.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (quoted) throw Error(ErrorKind::Validation, "csv: unterminated quoted field");
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw Error(ErrorKind::Validation, "csv: missing header row");

    CsvTable t;
    t.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != t.header.size()) {
            throw Error(ErrorKind::Validation, "csv: row " + std::to_string(i) + " has " +
                                                   std::to_string(records[i].size()) + " fields, header has " +
                                                   std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(records[i]));
    }
    return t;
}

CsvTable sweep_table(const std::vector<LabeledTrace>& traces, FreqConvention convention) {
    CsvTable t;
    t.header = {"series",     "direction",    "control_value", "root1_n",      "root2_n", "root3_n",
                "followed_n", "root1_stable", "root2_stable",  "root3_stable", "chi_sq",
                "freq_convention"};
    for (const auto& lt : traces) {
        const std::string chi_sq = format_double(lt.trace.chi * lt.trace.chi);
        for (const auto& s : lt.trace.samples) {
            std::vector<std::string> row(t.header.size());
            row[0] = lt.series;
            row[1] = std::string(to_string(lt.trace.direction));
            row[2] = format_double(s.control_value);
            for (std::size_t k = 0; k < s.roots.size() && k < 3; ++k) {
                row[3 + k] = format_double(s.roots[k].n);
                row[7 + k] = stable_flag(s.roots[k].stability);
            }
            if (s.followed_n) row[6] = format_double(*s.followed_n);
            row[10] = chi_sq;
            row[11] = std::string(to_string(convention));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

CsvTable map_table(const ThresholdMap& map, FreqConvention convention) {
    CsvTable t;
    t.header = {"delta_at_over_gamma", "kC_over_omega_m", "P_th_watts", "freq_convention"};
    for (std::size_t i = 0; i < map.delta_at_over_gamma.size(); ++i) {
        for (std::size_t j = 0; j < map.kC_over_omega_m.size(); ++j) {
            const auto& cell = map.at(i, j);
            t.rows.push_back({format_double(map.delta_at_over_gamma[i]), format_double(map.kC_over_omega_m[j]),
                              cell ? format_double(*cell) : std::string(), std::string(to_string(convention))});
        }
    }
    return t;
}

CsvTable trajectory_table(const Trajectory& traj) {
    CsvTable t;
    t.header = {"t_omega_m", "n_b", "n_a", "n_c", "n_d"};
    for (const auto& s : traj.samples) {
        t.rows.push_back({format_double(s.t), format_double(s.occupancy(Mode::Mechanical)),
                          format_double(s.occupancy(Mode::Optical)), format_double(s.occupancy(Mode::Feedback)),
                          format_double(s.occupancy(Mode::Atomic))});
    }
    return t;
}

}  // namespace hybridom
