#pragma once

// Validated ingestion and emission of the three file formats:
//   roster      CSV   researcher_id,surname,given_names,field_code,institution_id,tenure_years
//   publications JSONL {"id","year","categories","citations","authors","affiliations"}
//   taxonomy    CSV   field_code,field_name,discipline_code,discipline_name
// Links travel as CSV publication_id,researcher_id,byline_index,author_count_total.

#include <fstream>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "fieldrank/csv.hpp"
#include "fieldrank/text.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path);
    return out;
}

inline FieldTaxonomy load_taxonomy(const std::string& path) {
    auto in = open_input(path);
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row != std::vector<std::string>{"field_code", "field_name",
                                                             "discipline_code", "discipline_name"})
        throw input_error(path + ": bad taxonomy header");
    FieldTaxonomy tax;
    while (reader.next(row)) {
        if (row.size() != 4)
            throw input_error(path + " line " + std::to_string(reader.line()) +
                              ": expected 4 fields, got " + std::to_string(row.size()));
        tax.add(row[0], row[1], row[2], row[3]);
    }
    return tax;
}

struct RosterLoadResult {
    std::vector<Researcher> roster;
    int excluded_by_tenure = 0;
};

inline RosterLoadResult load_roster(const std::string& path, const AnalysisWindow& window,
                                    const FieldTaxonomy& taxonomy) {
    window.validate();
    auto in = open_input(path);
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) ||
        row != std::vector<std::string>{"researcher_id", "surname", "given_names", "field_code",
                                        "institution_id", "tenure_years"})
        throw input_error(path + ": bad roster header");

    RosterLoadResult out;
    std::unordered_set<std::string> seen_ids;
    while (reader.next(row)) {
        const std::string at = path + " line " + std::to_string(reader.line());
        if (row.size() != 6)
            throw input_error(at + ": expected 6 fields, got " + std::to_string(row.size()));
        Researcher r;
        r.researcher_id = row[0];
        r.surname = row[1];
        r.given_name_tokens = split_ws(row[2]);
        r.field_code = row[3];
        r.institution_id = row[4];
        try {
            std::size_t consumed = 0;
            r.tenure_years_in_window = std::stoi(row[5], &consumed);
            if (consumed != row[5].size()) throw std::invalid_argument(row[5]);
        } catch (const std::exception&) {
            throw input_error(at + ": tenure_years is not an integer: " + row[5]);
        }
        if (r.researcher_id.empty() || r.surname.empty())
            throw input_error(at + ": empty researcher_id or surname");
        if (r.tenure_years_in_window < 0)
            throw input_error(at + ": negative tenure_years");
        if (!seen_ids.insert(r.researcher_id).second)
            throw validation_error(path + ": duplicate researcher_id " + r.researcher_id);
        if (!taxonomy.has_field(r.field_code))
            throw validation_error(path + ": unknown field_code " + r.field_code +
                                   " (researcher " + r.researcher_id + ")");
        r.discipline_code = taxonomy.discipline_of(r.field_code);
        if (r.tenure_years_in_window < window.min_tenure_years) {
            ++out.excluded_by_tenure;
            continue;
        }
        out.roster.push_back(std::move(r));
    }
    return out;
}

struct PublicationLoadResult {
    std::vector<Publication> publications;
    int out_of_window = 0;
};

inline PublicationLoadResult load_publications(const std::string& path,
                                               const AnalysisWindow& window) {
    window.validate();
    auto in = open_input(path);
    PublicationLoadResult out;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string at = path + " line " + std::to_string(lineno);
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw input_error(at + ": invalid JSON");
        Publication p;
        try {
            p.publication_id = j.at("id").get<std::string>();
            p.year = j.at("year").get<int>();
            p.subject_categories = j.at("categories").get<std::vector<std::string>>();
            p.citation_count = j.at("citations").get<std::int64_t>();
            p.author_strings = j.at("authors").get<std::vector<std::string>>();
            p.affiliation_strings = j.value("affiliations", std::vector<std::string>{});
        } catch (const nlohmann::json::exception& e) {
            throw input_error(at + ": " + e.what());
        }
        p.author_count_total = static_cast<int>(p.author_strings.size());
        if (p.subject_categories.empty())
            throw validation_error(at + ": empty subject categories (publication " +
                                   p.publication_id + ")");
        if (p.citation_count < 0)
            throw validation_error(at + ": negative citation_count (publication " +
                                   p.publication_id + ")");
        if (p.author_strings.empty())
            throw validation_error(at + ": empty author list (publication " + p.publication_id +
                                   ")");
        if (!seen_ids.insert(p.publication_id).second)
            throw validation_error(path + ": duplicate publication id " + p.publication_id);
        if (!window.contains(p.year)) {
            ++out.out_of_window;
            continue;
        }
        out.publications.push_back(std::move(p));
    }
    return out;
}

inline void write_roster(std::ostream& out, const std::vector<Researcher>& roster) {
    csv_write_row(out, {"researcher_id", "surname", "given_names", "field_code", "institution_id",
                        "tenure_years"});
    for (const auto& r : roster) {
        std::string given;
        for (std::size_t i = 0; i < r.given_name_tokens.size(); ++i) {
            if (i) given += ' ';
            given += r.given_name_tokens[i];
        }
        csv_write_row(out, {r.researcher_id, r.surname, given, r.field_code, r.institution_id,
                            std::to_string(r.tenure_years_in_window)});
    }
}

inline void write_publications(std::ostream& out, const std::vector<Publication>& pubs) {
    for (const auto& p : pubs) {
        nlohmann::ordered_json j;
        j["id"] = p.publication_id;
        j["year"] = p.year;
        j["categories"] = p.subject_categories;
        j["citations"] = p.citation_count;
        j["authors"] = p.author_strings;
        j["affiliations"] = p.affiliation_strings;
        out << j.dump() << '\n';
    }
}

inline void write_taxonomy(std::ostream& out, const FieldTaxonomy& tax) {
    csv_write_row(out, {"field_code", "field_name", "discipline_code", "discipline_name"});
    std::set<std::string> codes;
    for (const auto& [code, entry] : tax.fields()) codes.insert(code);
    for (const auto& code : codes) {
        const auto& entry = tax.fields().at(code);
        csv_write_row(out, {code, entry.field_name, entry.discipline_code,
                            tax.discipline_name(entry.discipline_code)});
    }
}

inline void write_links(std::ostream& out, const std::vector<AuthorshipLink>& links) {
    csv_write_row(out, {"publication_id", "researcher_id", "byline_index", "author_count_total"});
    for (const auto& l : links)
        csv_write_row(out, {l.publication_id, l.researcher_id, std::to_string(l.byline_index),
                            std::to_string(l.author_count_total)});
}

inline std::vector<AuthorshipLink> load_links(const std::string& path) {
    auto in = open_input(path);
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row != std::vector<std::string>{"publication_id", "researcher_id",
                                                             "byline_index", "author_count_total"})
        throw input_error(path + ": bad links header");
    std::vector<AuthorshipLink> links;
    while (reader.next(row)) {
        if (row.size() != 4)
            throw input_error(path + " line " + std::to_string(reader.line()) +
                              ": expected 4 fields");
        try {
            links.push_back({row[0], row[1], std::stoi(row[2]), std::stoi(row[3])});
        } catch (const std::exception&) {
            throw input_error(path + " line " + std::to_string(reader.line()) +
                              ": malformed integer field");
        }
    }
    return links;
}

}  // namespace fieldrank
