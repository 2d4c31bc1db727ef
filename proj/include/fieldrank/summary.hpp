#pragma once

// Per-discipline dataset summary: fields, staff, publications with at least
// one roster author, and HCA counts/shares per threshold. A publication
// co-authored across disciplines counts once in each discipline's row but
// once in the total.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "fieldrank/hca.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

struct SummaryRow {
    std::string discipline_code;
    std::string discipline_name;
    std::int64_t field_count = 0;
    std::int64_t staff_count = 0;
    std::int64_t publication_count = 0;
    std::vector<std::int64_t> hca_counts;  // aligned with SummaryReport::thresholds
};

struct SummaryReport {
    std::vector<double> thresholds;
    std::vector<SummaryRow> rows;  // one per discipline, ordered by code
    SummaryRow total;              // distinct publications, no double counting
};

inline SummaryReport corpus_summary(const Corpus& corpus, const CorpusIndex& index,
                                    const std::vector<const HcaSet*>& hca_sets = {}) {
    SummaryReport report;
    for (const auto* h : hca_sets) report.thresholds.push_back(h->threshold_p);

    std::map<std::string, SummaryRow> rows;
    std::map<std::string, std::set<std::string>> fields_per_uda;
    std::unordered_map<std::string, std::string> uda_of_researcher;
    for (const auto& r : corpus.roster) {
        auto& row = rows[r.discipline_code];
        row.discipline_code = r.discipline_code;
        ++row.staff_count;
        fields_per_uda[r.discipline_code].insert(r.field_code);
        uda_of_researcher.emplace(r.researcher_id, r.discipline_code);
    }

    std::map<std::string, std::unordered_set<std::uint32_t>> pubs_per_uda;
    std::unordered_set<std::uint32_t> pubs_total;
    for (const auto& link : corpus.links) {
        auto it = uda_of_researcher.find(link.researcher_id);
        if (it == uda_of_researcher.end()) continue;
        auto pub_idx = static_cast<std::uint32_t>(index.publication_index(link.publication_id));
        pubs_per_uda[it->second].insert(pub_idx);
        pubs_total.insert(pub_idx);
    }

    auto count_hcas = [&](const std::unordered_set<std::uint32_t>& pubs,
                          std::vector<std::int64_t>& out) {
        out.assign(hca_sets.size(), 0);
        for (auto idx : pubs)
            for (std::size_t t = 0; t < hca_sets.size(); ++t)
                if (hca_sets[t]->contains(idx)) ++out[t];
    };

    report.total.discipline_code = "TOTAL";
    for (auto& [code, row] : rows) {
        row.discipline_name = corpus.taxonomy.discipline_name(code);
        row.field_count = static_cast<std::int64_t>(fields_per_uda[code].size());
        const auto& pubs = pubs_per_uda[code];
        row.publication_count = static_cast<std::int64_t>(pubs.size());
        count_hcas(pubs, row.hca_counts);
        report.total.field_count += row.field_count;
        report.total.staff_count += row.staff_count;
        report.rows.push_back(row);
    }
    report.total.publication_count = static_cast<std::int64_t>(pubs_total.size());
    count_hcas(pubs_total, report.total.hca_counts);
    if (report.total.hca_counts.empty()) report.total.hca_counts.assign(hca_sets.size(), 0);
    return report;
}

}  // namespace fieldrank
