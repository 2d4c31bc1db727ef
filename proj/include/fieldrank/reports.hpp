#pragma once

// Table construction and deterministic rendering (csv / markdown / json) for
// the report bundle: dataset summary, discipline and field incidence tables,
// zero-TS and top-N lists, and threshold rank correlations.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fieldrank/analytics.hpp"
#include "fieldrank/csv.hpp"
#include "fieldrank/summary.hpp"

namespace fieldrank {

struct Table {
    std::string name;  // file stem
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// Shortest digit string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

// "1", "5", "2.5" for thresholds; file stems replace '.' with '_'.
inline std::string format_threshold(double p) {
    if (p == static_cast<std::int64_t>(p)) return std::to_string(static_cast<std::int64_t>(p));
    return format_double(p);
}

inline std::string threshold_stem(double p) {
    std::string s = format_threshold(p);
    for (auto& c : s)
        if (c == '.') c = '_';
    return s;
}

inline const char* mode_token(CountingMode mode) {
    return mode == CountingMode::full ? "full" : "fractional";
}

// Dataset summary (per-discipline staff/publications/HCA shares). With
// combined_shares the HCA cells render as "count (share%)", the display
// layout; otherwise counts and shares are separate columns.
inline Table summary_table(const SummaryReport& report, bool combined_shares) {
    Table t;
    t.name = "summary";
    t.title = "Dataset summary per discipline";
    t.columns = {"discipline_code", "discipline_name", "fields", "research_staff",
                 "publications"};
    for (double p : report.thresholds) {
        std::string tag = "hca_" + threshold_stem(p);
        if (combined_shares) {
            t.columns.push_back(tag);
        } else {
            t.columns.push_back(tag + "_count");
            t.columns.push_back(tag + "_share");
        }
    }
    auto emit = [&](const SummaryRow& row, const std::string& name) {
        std::vector<std::string> cells = {row.discipline_code, name,
                                          std::to_string(row.field_count),
                                          std::to_string(row.staff_count),
                                          std::to_string(row.publication_count)};
        for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
            std::int64_t count = i < row.hca_counts.size() ? row.hca_counts[i] : 0;
            std::string share = format_ratio_pct1(count, row.publication_count);
            if (combined_shares) {
                cells.push_back(share.empty() ? std::to_string(count)
                                              : std::to_string(count) + " (" + share + "%)");
            } else {
                cells.push_back(std::to_string(count));
                cells.push_back(share);
            }
        }
        t.rows.push_back(std::move(cells));
    };
    for (const auto& row : report.rows) emit(row, row.discipline_name);
    emit(report.total, "");
    return t;
}

inline Table discipline_table(const std::vector<DisciplineStats>& stats,
                              const FieldTaxonomy& taxonomy, CountingMode mode, double p) {
    Table t;
    t.name = std::string("disciplines_") + mode_token(mode) + "_" + threshold_stem(p);
    t.title = std::string("Top scientists per discipline (") + mode_token(mode) +
              " counting, threshold " + format_threshold(p) + "%)";
    t.columns = {"discipline_code", "discipline_name", "research_staff", "ts_count",
                 "incidence_pct", "rank"};
    for (const auto& d : stats) {
        t.rows.push_back({d.discipline_code, taxonomy.discipline_name(d.discipline_code),
                          std::to_string(d.staff_count), std::to_string(d.ts_count),
                          format_ratio_pct1(d.ts_count, d.staff_count), std::to_string(d.rank)});
    }
    return t;
}

inline Table field_table(std::vector<FieldStats> fields, const FieldTaxonomy& taxonomy,
                         CountingMode mode, double p, bool with_percentile_rank) {
    sort_by_incidence(fields);
    Table t;
    t.name = std::string("fields_") + mode_token(mode) + "_" + threshold_stem(p);
    t.title = std::string("Eligible fields by top-scientist incidence (") + mode_token(mode) +
              " counting, threshold " + format_threshold(p) + "%)";
    t.columns = {"field_code", "field_name", "discipline_code", "research_staff", "ts_count",
                 "incidence_pct"};
    if (with_percentile_rank) t.columns.push_back("percentile_rank");
    for (const auto& f : fields) {
        std::vector<std::string> cells = {
            f.field_code,       taxonomy.field_name(f.field_code),
            f.discipline_code,  std::to_string(f.staff_count),
            std::to_string(f.ts_count), format_ratio_pct1(f.ts_count, f.staff_count)};
        if (with_percentile_rank) cells.push_back(format_pct1(f.percentile_rank));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline Table zero_ts_table(const std::vector<FieldStats>& zero_fields,
                           const FieldTaxonomy& taxonomy, CountingMode mode, double p) {
    Table t;
    t.name = std::string("zero_ts_") + mode_token(mode) + "_" + threshold_stem(p);
    t.title = std::string("Fields with no top scientists (") + mode_token(mode) +
              " counting, threshold " + format_threshold(p) + "%)";
    t.columns = {"field_code", "field_name", "discipline_code", "research_staff"};
    for (const auto& f : zero_fields)
        t.rows.push_back({f.field_code, taxonomy.field_name(f.field_code), f.discipline_code,
                          std::to_string(f.staff_count)});
    return t;
}

inline Table top_table_render(const std::vector<FieldStats>& top_fields,
                              const FieldTaxonomy& taxonomy, CountingMode mode, double p,
                              std::size_t n) {
    Table t;
    t.name = std::string("top") + std::to_string(n) + "_" + mode_token(mode) + "_" +
             threshold_stem(p);
    t.title = "Top " + std::to_string(n) + " fields by incidence (" + mode_token(mode) +
              " counting, threshold " + format_threshold(p) + "%)";
    t.columns = {"field_code", "field_name", "discipline_code", "research_staff", "ts_count",
                 "incidence_pct"};
    for (const auto& f : top_fields)
        t.rows.push_back({f.field_code, taxonomy.field_name(f.field_code), f.discipline_code,
                          std::to_string(f.staff_count), std::to_string(f.ts_count),
                          format_ratio_pct1(f.ts_count, f.staff_count)});
    return t;
}

inline std::string render_csv(const Table& t) {
    std::ostringstream out;
    csv_write_row(out, t.columns);
    for (const auto& row : t.rows) csv_write_row(out, row);
    return out.str();
}

inline std::string render_markdown(const Table& t) {
    auto numeric = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '-' &&
                c != '%' && c != '(' && c != ')' && c != ' ')
                return false;
        return true;
    };
    std::vector<std::size_t> widths(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) widths[c] = t.columns[c].size();
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());

    std::ostringstream out;
    out << "## " << t.title << "\n\n";
    auto emit_row = [&](const std::vector<std::string>& cells, bool align_numeric) {
        out << '|';
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            std::string cell = c < cells.size() ? cells[c] : "";
            std::string pad(widths[c] - cell.size(), ' ');
            if (align_numeric && numeric(cell))
                out << ' ' << pad << cell << " |";
            else
                out << ' ' << cell << pad << " |";
        }
        out << '\n';
    };
    emit_row(t.columns, false);
    out << '|';
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << std::string(widths[c] + 2, '-') << '|';
    out << '\n';
    for (const auto& row : t.rows) emit_row(row, true);
    return out.str();
}

inline std::string render_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["title"] = t.title;
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            obj[t.columns[c]] = c < row.size() ? row[c] : "";
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

inline std::string render_table(const Table& t, const std::string& format) {
    if (format == "csv") return render_csv(t);
    if (format == "markdown") return render_markdown(t);
    if (format == "json") return render_json(t);
    throw input_error("unknown report format '" + format + "' (valid: csv, json, markdown)");
}

inline std::string format_extension(const std::string& format) {
    if (format == "csv") return ".csv";
    if (format == "markdown") return ".md";
    if (format == "json") return ".json";
    throw input_error("unknown report format '" + format + "' (valid: csv, json, markdown)");
}

}  // namespace fieldrank
