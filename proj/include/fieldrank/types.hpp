#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fieldrank/errors.hpp"

namespace fieldrank {

struct AnalysisWindow {
    int start_year = 2006;
    int end_year = 2010;
    int min_tenure_years = 3;

    int span() const { return end_year - start_year + 1; }
    bool contains(int year) const { return year >= start_year && year <= end_year; }

    void validate() const {
        if (start_year > end_year)
            throw validation_error("analysis window: start_year " + std::to_string(start_year) +
                                   " > end_year " + std::to_string(end_year));
        if (min_tenure_years < 1 || min_tenure_years > span())
            throw validation_error("analysis window: min_tenure_years " +
                                   std::to_string(min_tenure_years) + " outside [1, " +
                                   std::to_string(span()) + "]");
    }
};

struct Researcher {
    std::string researcher_id;
    std::string surname;
    std::vector<std::string> given_name_tokens;
    std::string field_code;       // SDS
    std::string discipline_code;  // UDA, resolved through the taxonomy
    std::string institution_id;
    int tenure_years_in_window = 0;
};

struct Publication {
    std::string publication_id;
    int year = 0;
    std::vector<std::string> subject_categories;
    std::int64_t citation_count = 0;
    std::vector<std::string> author_strings;
    std::vector<std::string> affiliation_strings;
    int author_count_total = 0;  // always == author_strings.size()
};

// A resolved (publication, byline) -> researcher attribution.
struct AuthorshipLink {
    std::string publication_id;
    std::string researcher_id;
    int byline_index = 0;
    int author_count_total = 1;

    friend bool operator==(const AuthorshipLink& a, const AuthorshipLink& b) {
        return a.publication_id == b.publication_id && a.researcher_id == b.researcher_id &&
               a.byline_index == b.byline_index;
    }
    friend bool operator<(const AuthorshipLink& a, const AuthorshipLink& b) {
        if (a.publication_id != b.publication_id) return a.publication_id < b.publication_id;
        if (a.byline_index != b.byline_index) return a.byline_index < b.byline_index;
        return a.researcher_id < b.researcher_id;
    }
};

class FieldTaxonomy {
public:
    struct Entry {
        std::string field_name;
        std::string discipline_code;
    };

    void add(const std::string& field_code, const std::string& field_name,
             const std::string& discipline_code, const std::string& discipline_name) {
        auto [it, inserted] = fields_.emplace(field_code, Entry{field_name, discipline_code});
        if (!inserted && it->second.discipline_code != discipline_code)
            throw validation_error("taxonomy: field " + field_code +
                                   " mapped to two disciplines: " + it->second.discipline_code +
                                   " and " + discipline_code);
        disciplines_.emplace(discipline_code, discipline_name);
    }

    bool has_field(const std::string& field_code) const { return fields_.count(field_code) > 0; }

    const std::string& discipline_of(const std::string& field_code) const {
        auto it = fields_.find(field_code);
        if (it == fields_.end())
            throw validation_error("taxonomy: unknown field code " + field_code);
        return it->second.discipline_code;
    }

    std::string field_name(const std::string& field_code) const {
        auto it = fields_.find(field_code);
        return it == fields_.end() ? std::string() : it->second.field_name;
    }

    std::string discipline_name(const std::string& discipline_code) const {
        auto it = disciplines_.find(discipline_code);
        return it == disciplines_.end() ? std::string() : it->second;
    }

    const std::unordered_map<std::string, Entry>& fields() const { return fields_; }
    const std::unordered_map<std::string, std::string>& disciplines() const {
        return disciplines_;
    }

    std::size_t field_count() const { return fields_.size(); }

private:
    std::unordered_map<std::string, Entry> fields_;
    std::unordered_map<std::string, std::string> disciplines_;  // code -> display name
};

// Immutable after construction; all analytic modules read it concurrently.
struct Corpus {
    AnalysisWindow window;
    std::vector<Researcher> roster;
    std::vector<Publication> publications;
    FieldTaxonomy taxonomy;
    std::vector<AuthorshipLink> links;  // populated by the disambig module
};

// Id -> vector-index lookups, built once over an immutable corpus.
class CorpusIndex {
public:
    explicit CorpusIndex(const Corpus& corpus) : corpus_(&corpus) {
        researcher_by_id_.reserve(corpus.roster.size());
        for (std::size_t i = 0; i < corpus.roster.size(); ++i)
            researcher_by_id_.emplace(corpus.roster[i].researcher_id, i);
        publication_by_id_.reserve(corpus.publications.size());
        for (std::size_t i = 0; i < corpus.publications.size(); ++i)
            publication_by_id_.emplace(corpus.publications[i].publication_id, i);
    }

    const Corpus& corpus() const { return *corpus_; }

    std::size_t researcher_index(const std::string& id) const {
        auto it = researcher_by_id_.find(id);
        if (it == researcher_by_id_.end())
            throw internal_error("corpus index: unknown researcher id " + id);
        return it->second;
    }

    std::size_t publication_index(const std::string& id) const {
        auto it = publication_by_id_.find(id);
        if (it == publication_by_id_.end())
            throw internal_error("corpus index: unknown publication id " + id);
        return it->second;
    }

    bool has_researcher(const std::string& id) const { return researcher_by_id_.count(id) > 0; }
    bool has_publication(const std::string& id) const { return publication_by_id_.count(id) > 0; }

private:
    const Corpus* corpus_;
    std::unordered_map<std::string, std::size_t> researcher_by_id_;
    std::unordered_map<std::string, std::size_t> publication_by_id_;
};

}  // namespace fieldrank
