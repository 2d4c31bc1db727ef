#pragma once

// Top-scientist identification from HCA authorships, under full counting
// (any HCA byline qualifies) and fractional counting (summed 1/author-count
// credit must reach theta).

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldrank/hca.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

enum class CountingMode { full, fractional };

struct TopScientistSet {
    double threshold_p = 0.0;
    CountingMode mode = CountingMode::full;
    double theta = 0.1;  // fractional mode only
    std::unordered_set<std::string> members;
};

struct FractionalOutput {
    std::string researcher_id;
    double value = 0.0;
};

inline void validate_theta(double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw validation_error("fractional threshold theta must lie in (0, 1], got " +
                               std::to_string(theta));
}

// Ascending-sorted Kahan sum, so the value is independent of link order and
// stable at the theta boundary.
inline double compensated_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0, carry = 0.0;
    for (double t : terms) {
        double y = t - carry;
        double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    return sum;
}

namespace detail {

// Distinct (researcher, publication) HCA pairs; a researcher appearing on two
// bylines of one publication is credited once.
inline std::unordered_map<std::string, std::vector<const AuthorshipLink*>> hca_links_by_researcher(
    const Corpus& corpus, const CorpusIndex& index, const HcaSet& hcas) {
    std::unordered_map<std::string, std::vector<const AuthorshipLink*>> by_researcher;
    std::unordered_set<std::string> seen_pair;
    seen_pair.reserve(corpus.links.size());
    for (const auto& link : corpus.links) {
        std::size_t pub_idx = index.publication_index(link.publication_id);
        if (!hcas.contains(pub_idx)) continue;
        if (!seen_pair.insert(link.researcher_id + '\x1f' + link.publication_id).second) continue;
        by_researcher[link.researcher_id].push_back(&link);
    }
    return by_researcher;
}

}  // namespace detail

inline TopScientistSet top_scientists_full(const Corpus& corpus, const CorpusIndex& index,
                                           const HcaSet& hcas) {
    TopScientistSet out;
    out.threshold_p = hcas.threshold_p;
    out.mode = CountingMode::full;
    for (const auto& link : corpus.links) {
        std::size_t pub_idx = index.publication_index(link.publication_id);
        if (hcas.contains(pub_idx)) out.members.insert(link.researcher_id);
    }
    return out;
}

// All researchers' fractional outputs in one pass. Researchers with no HCA
// links are absent from the map (their value is 0).
inline std::unordered_map<std::string, double> fractional_outputs(const Corpus& corpus,
                                                                  const CorpusIndex& index,
                                                                  const HcaSet& hcas) {
    auto by_researcher = detail::hca_links_by_researcher(corpus, index, hcas);
    std::unordered_map<std::string, double> out;
    out.reserve(by_researcher.size());
    std::vector<double> terms;
    for (const auto& [rid, links] : by_researcher) {
        terms.clear();
        for (const auto* link : links) terms.push_back(1.0 / link->author_count_total);
        out.emplace(rid, compensated_sum(terms));
    }
    return out;
}

inline FractionalOutput fractional_output(const std::string& researcher_id, const Corpus& corpus,
                                          const CorpusIndex& index, const HcaSet& hcas) {
    std::vector<double> terms;
    std::unordered_set<std::string> seen_pub;
    for (const auto& link : corpus.links) {
        if (link.researcher_id != researcher_id) continue;
        std::size_t pub_idx = index.publication_index(link.publication_id);
        if (!hcas.contains(pub_idx)) continue;
        if (!seen_pub.insert(link.publication_id).second) continue;
        terms.push_back(1.0 / link.author_count_total);
    }
    return {researcher_id, compensated_sum(terms)};
}

inline TopScientistSet top_scientists_fractional(const Corpus& corpus, const CorpusIndex& index,
                                                 const HcaSet& hcas, double theta = 0.1) {
    validate_theta(theta);
    TopScientistSet out;
    out.threshold_p = hcas.threshold_p;
    out.mode = CountingMode::fractional;
    out.theta = theta;
    for (const auto& [rid, value] : fractional_outputs(corpus, index, hcas)) {
        if (value >= theta) out.members.insert(rid);  // inclusive boundary
    }
    return out;
}

}  // namespace fieldrank
