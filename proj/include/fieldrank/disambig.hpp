#pragma once

// Byline -> roster identity resolution in three steps: candidate mapping on
// folded surname + compatible initials, false-positive filtering through an
// ordered heuristic cascade (affiliation containment, then category
// affinity), and scoring against planted truth.
//
// The filter drops bylines it cannot settle rather than guessing, biasing
// toward precision.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldrank/text.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

struct ResolutionMetrics {
    std::int64_t true_positives = 0;
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

// One byline with every roster identity it could denote.
struct CandidateGroup {
    std::uint32_t publication_index = 0;
    std::uint32_t byline_index = 0;
    std::vector<std::uint32_t> researcher_indices;  // ascending roster indices
};

struct CandidateSet {
    std::vector<CandidateGroup> groups;  // publication order, then byline order
};

struct DisambigDiagnostics {
    std::int64_t bylines_with_candidates = 0;
    std::int64_t unambiguous = 0;
    std::int64_t resolved_affiliation = 0;
    std::int64_t resolved_category = 0;
    std::int64_t dropped_ambiguous = 0;
    std::int64_t dropped_duplicate = 0;  // same researcher twice on one byline list
};

inline CandidateSet candidate_map(const std::vector<Researcher>& roster,
                                  const std::vector<Publication>& publications) {
    // Surname key -> roster indices. Multi-token surnames are reachable under
    // the joined form and under each token.
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_surname;
    std::vector<std::string> researcher_initials(roster.size());
    for (std::size_t r = 0; r < roster.size(); ++r) {
        for (const auto& key : surname_keys(fold_name(roster[r].surname)))
            by_surname[key].push_back(static_cast<std::uint32_t>(r));
        for (const auto& tok : roster[r].given_name_tokens) {
            std::string folded = fold_name(tok);
            if (!folded.empty()) researcher_initials[r] += folded[0];
        }
    }

    CandidateSet out;
    std::vector<std::uint32_t> merged;
    for (std::size_t p = 0; p < publications.size(); ++p) {
        const auto& pub = publications[p];
        for (std::size_t b = 0; b < pub.author_strings.size(); ++b) {
            BylineName name = parse_byline(pub.author_strings[b]);
            if (!name.valid) continue;
            merged.clear();
            for (const auto& key : surname_keys(name.surname)) {
                auto it = by_surname.find(key);
                if (it == by_surname.end()) continue;
                merged.insert(merged.end(), it->second.begin(), it->second.end());
            }
            if (merged.empty()) continue;
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

            CandidateGroup group;
            group.publication_index = static_cast<std::uint32_t>(p);
            group.byline_index = static_cast<std::uint32_t>(b);
            for (auto r : merged) {
                // Every byline initial must match the researcher's given-name
                // tokens positionally; a shorter byline is compatible.
                const std::string& full = researcher_initials[r];
                if (name.initials.size() > full.size()) continue;
                if (full.compare(0, name.initials.size(), name.initials) != 0) continue;
                group.researcher_indices.push_back(r);
            }
            if (!group.researcher_indices.empty()) out.groups.push_back(std::move(group));
        }
    }
    return out;
}

namespace detail {

// Per-field category frequency profile with a deterministic key order.
struct CategoryProfile {
    std::map<std::string, std::int64_t> counts;
    double norm = 0.0;

    void finalize() {
        double sum = 0.0;
        for (const auto& [cat, c] : counts) sum += static_cast<double>(c) * static_cast<double>(c);
        norm = std::sqrt(sum);
    }

    // Cosine similarity against a publication's binary category vector.
    double affinity(const std::vector<std::string>& categories) const {
        if (norm == 0.0 || categories.empty()) return 0.0;
        double dot = 0.0;
        for (const auto& cat : categories) {
            auto it = counts.find(cat);
            if (it != counts.end()) dot += static_cast<double>(it->second);
        }
        return dot / (norm * std::sqrt(static_cast<double>(categories.size())));
    }
};

}  // namespace detail

inline std::vector<AuthorshipLink> filter_links(const CandidateSet& candidates,
                                                const Corpus& corpus,
                                                DisambigDiagnostics* diagnostics = nullptr) {
    DisambigDiagnostics local;
    DisambigDiagnostics& diag = diagnostics ? *diagnostics : local;
    diag = DisambigDiagnostics{};
    diag.bylines_with_candidates = static_cast<std::int64_t>(candidates.groups.size());

    // Category profiles per field, learned from the unambiguous groups.
    std::map<std::string, detail::CategoryProfile> profiles;
    for (const auto& group : candidates.groups) {
        if (group.researcher_indices.size() != 1) continue;
        const auto& field = corpus.roster[group.researcher_indices[0]].field_code;
        auto& profile = profiles[field];
        for (const auto& cat : corpus.publications[group.publication_index].subject_categories)
            ++profile.counts[cat];
    }
    for (auto& [field, profile] : profiles) profile.finalize();

    std::vector<AuthorshipLink> links;
    links.reserve(candidates.groups.size());
    std::unordered_set<std::string> assigned;  // researchers already on this publication
    std::uint32_t current_pub = ~0u;
    std::string folded_affiliations;

    for (const auto& group : candidates.groups) {
        const Publication& pub = corpus.publications[group.publication_index];
        if (group.publication_index != current_pub) {
            current_pub = group.publication_index;
            assigned.clear();
            folded_affiliations.clear();
            for (const auto& a : pub.affiliation_strings) {
                folded_affiliations += fold_name(a);
                folded_affiliations += '\x1f';
            }
        }

        std::int64_t winner = -1;
        if (group.researcher_indices.size() == 1) {
            winner = group.researcher_indices[0];
            ++diag.unambiguous;
        } else {
            // Heuristic 1: institution appears in an affiliation string.
            std::vector<std::uint32_t> survivors;
            for (auto r : group.researcher_indices) {
                const std::string inst = fold_name(corpus.roster[r].institution_id);
                if (!inst.empty() && folded_affiliations.find(inst) != std::string::npos)
                    survivors.push_back(r);
            }
            if (survivors.size() == 1) {
                winner = survivors[0];
                ++diag.resolved_affiliation;
            } else {
                // Heuristic 2: best category affinity, strict maximum only.
                const auto& pool =
                    survivors.size() >= 2 ? survivors : group.researcher_indices;
                double best = -1.0, second = -1.0;
                std::int64_t best_r = -1;
                for (auto r : pool) {
                    auto it = profiles.find(corpus.roster[r].field_code);
                    double score =
                        it == profiles.end() ? 0.0 : it->second.affinity(pub.subject_categories);
                    if (score > best) {
                        second = best;
                        best = score;
                        best_r = r;
                    } else if (score > second) {
                        second = score;
                    }
                }
                if (best_r >= 0 && best > 0.0 && best > second) {
                    winner = best_r;
                    ++diag.resolved_category;
                } else {
                    ++diag.dropped_ambiguous;
                }
            }
        }

        if (winner < 0) continue;
        const Researcher& r = corpus.roster[static_cast<std::size_t>(winner)];
        if (!assigned.insert(r.researcher_id).second) {
            ++diag.dropped_duplicate;
            continue;
        }
        links.push_back({pub.publication_id, r.researcher_id,
                         static_cast<int>(group.byline_index), pub.author_count_total});
    }
    return links;
}

inline std::vector<AuthorshipLink> resolve_links(const Corpus& corpus,
                                                 DisambigDiagnostics* diagnostics = nullptr) {
    return filter_links(candidate_map(corpus.roster, corpus.publications), corpus, diagnostics);
}

inline ResolutionMetrics score_links(const std::vector<AuthorshipLink>& links,
                                     const std::vector<AuthorshipLink>& truth) {
    auto key = [](const AuthorshipLink& l) {
        return l.publication_id + '\x1f' + std::to_string(l.byline_index) + '\x1f' +
               l.researcher_id;
    };
    std::unordered_set<std::string> truth_keys;
    truth_keys.reserve(truth.size());
    for (const auto& l : truth) truth_keys.insert(key(l));

    ResolutionMetrics m;
    for (const auto& l : links) {
        if (truth_keys.count(key(l)))
            ++m.true_positives;
        else
            ++m.false_positives;
    }
    m.false_negatives = static_cast<std::int64_t>(truth_keys.size()) - m.true_positives;
    double tp = static_cast<double>(m.true_positives);
    m.precision = (m.true_positives + m.false_positives) > 0
                      ? tp / static_cast<double>(m.true_positives + m.false_positives)
                      : 0.0;
    m.recall = (m.true_positives + m.false_negatives) > 0
                   ? tp / static_cast<double>(m.true_positives + m.false_negatives)
                   : 0.0;
    m.f_measure = (m.precision + m.recall) > 0.0
                      ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                      : 0.0;
    return m;
}

}  // namespace fieldrank
