#pragma once

// World citation percentiles per (year, subject-category) stratum and the
// highly-cited-article classification on top of them.
//
// A publication's percentile within a stratum is the share of stratum members
// with a *strictly* greater citation count, so 0 is best and ties share a
// value. Multi-category publications take the minimum (most favorable)
// percentile across their categories. An article is highly cited at threshold
// p when that effective percentile is < p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fieldrank/parallel.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

struct Stratum {
    int year = 0;
    std::string category;
    std::vector<std::uint32_t> members;  // indices into the publication vector
};

struct StrataIndex {
    std::vector<Stratum> strata;  // ordered by (year, category)
    std::map<std::pair<int, std::string>, std::size_t> by_key;

    const Stratum* find(int year, const std::string& category) const {
        auto it = by_key.find({year, category});
        return it == by_key.end() ? nullptr : &strata[it->second];
    }
};

inline StrataIndex build_strata(const std::vector<Publication>& publications) {
    std::map<std::pair<int, std::string>, std::vector<std::uint32_t>> groups;
    for (std::size_t i = 0; i < publications.size(); ++i) {
        const auto& pub = publications[i];
        for (const auto& cat : pub.subject_categories)
            groups[{pub.year, cat}].push_back(static_cast<std::uint32_t>(i));
    }
    StrataIndex index;
    index.strata.reserve(groups.size());
    for (auto& [key, members] : groups) {
        index.by_key.emplace(key, index.strata.size());
        index.strata.push_back({key.first, key.second, std::move(members)});
    }
    return index;
}

// Percentiles for every member of one stratum, aligned with stratum.members.
inline std::vector<double> stratum_percentiles(const Stratum& stratum,
                                               const std::vector<Publication>& publications) {
    const std::size_t n = stratum.members.size();
    std::vector<std::int64_t> sorted;
    sorted.reserve(n);
    for (auto idx : stratum.members) sorted.push_back(publications[idx].citation_count);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t c = publications[stratum.members[i]].citation_count;
        auto ub = std::upper_bound(sorted.begin(), sorted.end(), c);
        std::size_t superiors = n - static_cast<std::size_t>(ub - sorted.begin());
        out[i] = 100.0 * static_cast<double>(superiors) / static_cast<double>(n);
    }
    return out;
}

struct PercentileRecord {
    std::string publication_id;
    std::vector<std::pair<std::string, double>> per_category_percentile;
    double effective_percentile = 0.0;
};

// Per-corpus percentile state: per-stratum member percentiles plus each
// publication's effective (minimum) percentile.
struct PercentileIndex {
    std::vector<std::vector<double>> per_stratum;  // aligned with StrataIndex::strata
    std::vector<double> effective;                 // by publication index; 100 if in no stratum
    int degenerate_strata = 0;                     // strata whose counts are all tied
};

inline PercentileIndex compute_percentiles(const std::vector<Publication>& publications,
                                           const StrataIndex& strata, int threads = 1) {
    PercentileIndex out;
    out.per_stratum.resize(strata.strata.size());
    parallel_chunks(strata.strata.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s)
            out.per_stratum[s] = stratum_percentiles(strata.strata[s], publications);
    });
    out.effective.assign(publications.size(), 100.0);
    for (std::size_t s = 0; s < strata.strata.size(); ++s) {
        const auto& members = strata.strata[s].members;
        const auto& pcts = out.per_stratum[s];
        bool all_tied = true;
        for (std::size_t i = 0; i < members.size(); ++i) {
            out.effective[members[i]] = std::min(out.effective[members[i]], pcts[i]);
            if (pcts[i] != pcts[0]) all_tied = false;
        }
        if (all_tied && !members.empty()) ++out.degenerate_strata;
    }
    return out;
}

// Full per-category record for one publication. Throws on a missing stratum:
// every listed category must have been seen by build_strata.
inline PercentileRecord effective_percentile(const Publication& pub, const StrataIndex& strata,
                                             const PercentileIndex& percentiles,
                                             std::size_t pub_index) {
    PercentileRecord rec;
    rec.publication_id = pub.publication_id;
    rec.effective_percentile = 100.0;
    for (const auto& cat : pub.subject_categories) {
        auto it = strata.by_key.find({pub.year, cat});
        if (it == strata.by_key.end())
            throw internal_error("strata index inconsistency: no stratum for year " +
                                 std::to_string(pub.year) + " category " + cat);
        const Stratum& st = strata.strata[it->second];
        const auto& pcts = percentiles.per_stratum[it->second];
        double pct = 100.0;
        bool found = false;
        for (std::size_t i = 0; i < st.members.size(); ++i) {
            if (st.members[i] == pub_index) {
                pct = pcts[i];
                found = true;
                break;
            }
        }
        if (!found)
            throw internal_error("strata index inconsistency: publication " + pub.publication_id +
                                 " missing from stratum " + std::to_string(pub.year) + "/" + cat);
        rec.per_category_percentile.emplace_back(cat, pct);
        rec.effective_percentile = std::min(rec.effective_percentile, pct);
    }
    return rec;
}

struct HcaSet {
    double threshold_p = 0.0;
    std::vector<std::uint8_t> flags;  // by publication index
    std::unordered_set<std::string> members;

    bool contains(std::size_t pub_index) const { return flags[pub_index] != 0; }
};

inline void validate_threshold(double threshold_p) {
    if (!(threshold_p > 0.0 && threshold_p < 100.0))
        throw validation_error("HCA threshold must lie in (0, 100), got " +
                               std::to_string(threshold_p));
}

inline HcaSet hca_set(const std::vector<Publication>& publications,
                      const PercentileIndex& percentiles, double threshold_p) {
    validate_threshold(threshold_p);
    HcaSet out;
    out.threshold_p = threshold_p;
    out.flags.assign(publications.size(), 0);
    for (std::size_t i = 0; i < publications.size(); ++i) {
        if (percentiles.effective[i] < threshold_p) {
            out.flags[i] = 1;
            out.members.insert(publications[i].publication_id);
        }
    }
    return out;
}

}  // namespace fieldrank
