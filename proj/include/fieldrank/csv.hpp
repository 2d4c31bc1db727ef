#pragma once

// Minimal RFC-4180-style CSV reader/writer: quoted fields, doubled quotes,
// no embedded newlines (the file formats here never need them).

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fieldrank/errors.hpp"

namespace fieldrank {

class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads the next record into row; returns false at end of input.
    // Blank lines are skipped.
    bool next(std::vector<std::string>& row) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            parse_line(line, row);
            return true;
        }
        return false;
    }

    std::size_t line() const { return line_; }

private:
    void parse_line(const std::string& line, std::vector<std::string>& row) {
        row.clear();
        std::string field;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                row.push_back(std::move(field));
                field.clear();
            } else {
                field += c;
            }
        }
        if (quoted)
            throw input_error("line " + std::to_string(line_) + ": unterminated quoted field");
        row.push_back(std::move(field));
    }

    std::istream& in_;
    std::size_t line_ = 0;
};

inline std::string csv_quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void csv_write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(row[i]);
    }
    out << '\n';
}

}  // namespace fieldrank
