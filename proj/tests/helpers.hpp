#pragma once

// Shared test scaffolding: scratch directories and tiny corpus builders.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fieldrank/types.hpp"

namespace testutil {

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("fieldrank_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
    return path;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A researcher with sensible defaults for hand-built corpora.
inline fieldrank::Researcher researcher(std::string id, std::string field,
                                        std::string discipline, std::string surname = "Surname",
                                        std::vector<std::string> given = {"Nome"},
                                        std::string institution = "INST-1") {
    fieldrank::Researcher r;
    r.researcher_id = std::move(id);
    r.surname = std::move(surname);
    r.given_name_tokens = std::move(given);
    r.field_code = std::move(field);
    r.discipline_code = std::move(discipline);
    r.institution_id = std::move(institution);
    r.tenure_years_in_window = 5;
    return r;
}

inline fieldrank::Publication publication(std::string id, int year,
                                          std::vector<std::string> categories,
                                          std::int64_t citations,
                                          std::vector<std::string> authors = {"Surname, N."},
                                          std::vector<std::string> affiliations = {}) {
    fieldrank::Publication p;
    p.publication_id = std::move(id);
    p.year = year;
    p.subject_categories = std::move(categories);
    p.citation_count = citations;
    p.author_strings = std::move(authors);
    p.affiliation_strings = std::move(affiliations);
    p.author_count_total = static_cast<int>(p.author_strings.size());
    return p;
}

}  // namespace testutil
