#ifndef TDFF_IO_SCORES_FILE_HPP
#define TDFF_IO_SCORES_FILE_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "tdff/detail/csv.hpp"
#include "tdff/errors.hpp"
#include "tdff/scoring.hpp"

namespace tdff::io {

/// Formats a double with 17 significant digits, enough to round-trip the
/// value exactly through text.
inline std::string format_score(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_scores_csv(const std::string& path, const std::vector<PairScore>& scores) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "probe_template,gallery_template,score\n";
    for (const PairScore& s : scores) {
        detail::check_csv_field(s.probe_template, "probe_template");
        detail::check_csv_field(s.gallery_template, "gallery_template");
        os << s.probe_template << ',' << s.gallery_template << ',' << format_score(s.score) << '\n';
    }
    if (!os) throw IoError("write failed: " + path);
}

inline std::vector<PairScore> read_scores_csv(const std::string& path) {
    const auto rows = detail::read_csv_rows(path, {"probe_template", "gallery_template", "score"});
    std::vector<PairScore> out;
    out.reserve(rows.size());
    for (const auto& f : rows) {
        PairScore s;
        s.probe_template = f[0];
        s.gallery_template = f[1];
        char* end = nullptr;
        s.score = std::strtod(f[2].c_str(), &end);
        if (end == f[2].c_str() || *end != '\0') {
            throw ParseError(path + ": bad score value '" + f[2] + "'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace tdff::io

#endif  // TDFF_IO_SCORES_FILE_HPP
