#pragma once

// Field- and discipline-level strengths/weaknesses outputs: eligibility,
// top-scientist incidence, percentile ranks, zero-TS and top-N tables, and
// rank-correlation robustness checks.
//
// Orderings and tie tests use exact integer cross-multiplication on the
// (ts_count, staff_count) pairs, never floating-point incidences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldrank/scoring.hpp"
#include "fieldrank/spearman.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

struct FieldStats {
    std::string field_code;
    std::string discipline_code;
    std::int64_t staff_count = 0;
    std::int64_t ts_count = 0;
    double incidence = 0.0;        // ts_count / staff_count
    double percentile_rank = 0.0;  // 100 best, 0 worst; filled by percentile_rank()
};

struct DisciplineStats {
    std::string discipline_code;
    std::int64_t field_count = 0;
    std::int64_t staff_count = 0;
    std::int64_t ts_count = 0;
    double incidence = 0.0;
    int rank = 0;
};

// Exact comparison of ts_a/staff_a vs ts_b/staff_b.
inline int compare_ratio(std::int64_t ts_a, std::int64_t staff_a, std::int64_t ts_b,
                         std::int64_t staff_b) {
    std::int64_t lhs = ts_a * staff_b;
    std::int64_t rhs = ts_b * staff_a;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Percent at one decimal, half-up, computed exactly from the integer ratio.
inline std::string format_ratio_pct1(std::int64_t num, std::int64_t den) {
    if (den <= 0) return "";
    std::int64_t tenths = (2000 * num + den) / (2 * den);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

inline std::string format_pct1(double value) {
    long long tenths = std::llround(value * 10.0);
    std::string sign = tenths < 0 ? "-" : "";
    if (tenths < 0) tenths = -tenths;
    return sign + std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

struct FieldEligibility {
    std::set<std::string> eligible;
    std::vector<std::string> zero_staff_fields;  // taxonomy fields with no roster staff
};

// A field enters the analysis when at least tau of its staff have >= 1
// resolved publication.
inline FieldEligibility field_eligibility(const Corpus& corpus, double tau = 0.5) {
    std::unordered_set<std::string> has_link;
    has_link.reserve(corpus.roster.size());
    for (const auto& link : corpus.links) has_link.insert(link.researcher_id);

    std::map<std::string, std::pair<std::int64_t, std::int64_t>> per_field;  // staff, publishing
    for (const auto& r : corpus.roster) {
        auto& [staff, publishing] = per_field[r.field_code];
        ++staff;
        if (has_link.count(r.researcher_id)) ++publishing;
    }

    FieldEligibility out;
    for (const auto& [code, counts] : per_field) {
        if (static_cast<double>(counts.second) >=
            tau * static_cast<double>(counts.first) - 1e-12)
            out.eligible.insert(code);
    }
    for (const auto& [code, entry] : corpus.taxonomy.fields()) {
        if (!per_field.count(code)) out.zero_staff_fields.push_back(code);
    }
    std::sort(out.zero_staff_fields.begin(), out.zero_staff_fields.end());
    return out;
}

namespace detail {

inline std::map<std::string, std::vector<const Researcher*>> roster_by_field(
    const Corpus& corpus) {
    std::map<std::string, std::vector<const Researcher*>> out;
    for (const auto& r : corpus.roster) out[r.field_code].push_back(&r);
    return out;
}

}  // namespace detail

inline FieldStats incidence(const std::string& field_code, const TopScientistSet& ts,
                            const Corpus& corpus) {
    FieldStats stats;
    stats.field_code = field_code;
    for (const auto& r : corpus.roster) {
        if (r.field_code != field_code) continue;
        stats.discipline_code = r.discipline_code;
        ++stats.staff_count;
        if (ts.members.count(r.researcher_id)) ++stats.ts_count;
    }
    if (stats.staff_count == 0)
        throw internal_error("incidence: field " + field_code +
                             " has zero staff; caller must pre-filter");
    stats.incidence = static_cast<double>(stats.ts_count) / static_cast<double>(stats.staff_count);
    return stats;
}

// All fields (optionally restricted to an eligible set) in one roster pass.
inline std::vector<FieldStats> field_stats_all(const Corpus& corpus, const TopScientistSet& ts,
                                               const std::set<std::string>* eligible = nullptr) {
    std::map<std::string, FieldStats> per_field;
    for (const auto& r : corpus.roster) {
        if (eligible && !eligible->count(r.field_code)) continue;
        auto& stats = per_field[r.field_code];
        stats.field_code = r.field_code;
        stats.discipline_code = r.discipline_code;
        ++stats.staff_count;
        if (ts.members.count(r.researcher_id)) ++stats.ts_count;
    }
    std::vector<FieldStats> out;
    out.reserve(per_field.size());
    for (auto& [code, stats] : per_field) {
        stats.incidence =
            static_cast<double>(stats.ts_count) / static_cast<double>(stats.staff_count);
        out.push_back(std::move(stats));
    }
    return out;
}

// Display order: incidence desc, then staff desc, then field code asc.
inline void sort_by_incidence(std::vector<FieldStats>& fields) {
    std::sort(fields.begin(), fields.end(), [](const FieldStats& a, const FieldStats& b) {
        int cmp = compare_ratio(a.ts_count, a.staff_count, b.ts_count, b.staff_count);
        if (cmp != 0) return cmp > 0;
        if (a.staff_count != b.staff_count) return a.staff_count > b.staff_count;
        return a.field_code < b.field_code;
    });
}

inline std::vector<DisciplineStats> discipline_rollup(const Corpus& corpus,
                                                      const TopScientistSet& ts) {
    std::map<std::string, DisciplineStats> per_uda;
    std::map<std::string, std::set<std::string>> fields_per_uda;
    for (const auto& r : corpus.roster) {
        auto& stats = per_uda[r.discipline_code];
        stats.discipline_code = r.discipline_code;
        ++stats.staff_count;
        if (ts.members.count(r.researcher_id)) ++stats.ts_count;
        fields_per_uda[r.discipline_code].insert(r.field_code);
    }
    std::vector<DisciplineStats> out;
    out.reserve(per_uda.size());
    for (auto& [code, stats] : per_uda) {
        stats.field_count = static_cast<std::int64_t>(fields_per_uda[code].size());
        stats.incidence =
            static_cast<double>(stats.ts_count) / static_cast<double>(stats.staff_count);
        out.push_back(std::move(stats));
    }
    std::sort(out.begin(), out.end(), [](const DisciplineStats& a, const DisciplineStats& b) {
        int cmp = compare_ratio(a.ts_count, a.staff_count, b.ts_count, b.staff_count);
        if (cmp != 0) return cmp > 0;
        if (a.staff_count != b.staff_count) return a.staff_count > b.staff_count;
        return a.discipline_code < b.discipline_code;
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        int higher = 0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (compare_ratio(out[j].ts_count, out[j].staff_count, out[i].ts_count,
                              out[i].staff_count) > 0)
                ++higher;
        }
        out[i].rank = higher + 1;  // ties share a rank
    }
    return out;
}

// percentile_rank(f) = 100 * |{g : incidence(g) < incidence(f)}| / (N - 1).
// A unique maximum lands on 100, every minimum on 0, ties share a value.
inline void percentile_rank(std::vector<FieldStats>& fields) {
    const std::size_t n = fields.size();
    if (n < 2)
        throw validation_error("percentile_rank: need at least 2 fields, got " +
                               std::to_string(n));
    for (auto& f : fields) {
        std::size_t inferiors = 0;
        for (const auto& g : fields) {
            if (compare_ratio(g.ts_count, g.staff_count, f.ts_count, f.staff_count) < 0)
                ++inferiors;
        }
        f.percentile_rank =
            100.0 * static_cast<double>(inferiors) / static_cast<double>(n - 1);
    }
}

// Eligible fields with no top scientists, largest staff first.
inline std::vector<FieldStats> zero_ts_report(const std::vector<FieldStats>& fields) {
    std::vector<FieldStats> out;
    for (const auto& f : fields)
        if (f.ts_count == 0) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const FieldStats& a, const FieldStats& b) {
        if (a.staff_count != b.staff_count) return a.staff_count > b.staff_count;
        return a.field_code < b.field_code;
    });
    return out;
}

inline std::vector<FieldStats> top_table(const std::vector<FieldStats>& fields, std::size_t n) {
    if (n < 1) throw validation_error("top_table: n must be >= 1");
    std::vector<FieldStats> out = fields;
    sort_by_incidence(out);
    if (out.size() > n) out.resize(n);
    return out;
}

// Spearman over two field-keyed incidence vectors. The field sets must match.
inline RankCorrelation rank_correlation(const std::map<std::string, double>& ranking_a,
                                        const std::map<std::string, double>& ranking_b) {
    std::vector<std::string> only_a, only_b;
    for (const auto& [code, value] : ranking_a)
        if (!ranking_b.count(code)) only_a.push_back(code);
    for (const auto& [code, value] : ranking_b)
        if (!ranking_a.count(code)) only_b.push_back(code);
    if (!only_a.empty() || !only_b.empty()) {
        std::string msg = "rank_correlation: field sets differ;";
        for (const auto& c : only_a) msg += " +" + c;
        for (const auto& c : only_b) msg += " -" + c;
        throw validation_error(msg);
    }
    std::vector<double> a, b;
    a.reserve(ranking_a.size());
    b.reserve(ranking_b.size());
    for (const auto& [code, value] : ranking_a) {
        a.push_back(value);
        b.push_back(ranking_b.at(code));
    }
    return spearman(a, b);
}

inline std::map<std::string, double> incidence_vector(const std::vector<FieldStats>& fields) {
    std::map<std::string, double> out;
    for (const auto& f : fields) out.emplace(f.field_code, f.incidence);
    return out;
}

}  // namespace fieldrank
