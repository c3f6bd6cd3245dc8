#ifndef TDFF_DETAIL_CSV_HPP
#define TDFF_DETAIL_CSV_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tdff/errors.hpp"

namespace tdff::detail {

// Minimal CSV handling: comma-separated, no quoting or embedded commas.
// Identifiers in this domain are plain tokens, so full RFC 4180 support
// is not needed; writers reject fields that would not parse back.

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline void check_csv_field(const std::string& field, const char* column) {
    for (char c : field) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') {
            throw ParseError(std::string("csv field in column '") + column + "' contains a reserved character: " + field);
        }
    }
}

/// Reads all lines of a CSV file, checks the header against the expected
/// column list, and returns the data rows split into fields.
inline std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                           const std::vector<std::string>& expected_header) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw ParseError(path + ": missing header row");
    const auto header = split_csv_line(line);
    if (header != expected_header) {
        std::ostringstream want;
        for (std::size_t i = 0; i < expected_header.size(); ++i) {
            if (i) want << ',';
            want << expected_header[i];
        }
        throw ParseError(path + ": header mismatch, expected '" + want.str() + "', got '" + line + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != expected_header.size()) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace tdff::detail

#endif  // TDFF_DETAIL_CSV_HPP
