#ifndef TDFF_IO_METADATA_HPP
#define TDFF_IO_METADATA_HPP

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "tdff/detail/csv.hpp"
#include "tdff/errors.hpp"
#include "tdff/media.hpp"

namespace tdff::io {

enum class SplitRole { Train, Gallery, Probe };

inline const char* to_string(SplitRole r) {
    switch (r) {
        case SplitRole::Train: return "train";
        case SplitRole::Gallery: return "gallery";
        case SplitRole::Probe: return "probe";
    }
    return "?";
}

/// One parsed metadata row: a media record plus its protocol assignment.
struct MetadataRow {
    MediaRecord record;
    SplitRole split_role = SplitRole::Train;
    int split_id = 1;
};

inline const std::vector<std::string> kMetadataHeader = {
    "template_id", "subject_id", "media_id", "kind", "video_id", "split_role", "split_id"};

/// Parses the metadata CSV. Enforces per-row shape only (kind values,
/// video_id presence); cross-row consistency is the validator's job.
inline std::vector<MetadataRow> read_metadata_csv(const std::string& path) {
    const auto rows = detail::read_csv_rows(path, kMetadataHeader);
    std::vector<MetadataRow> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::string where = path + " row " + std::to_string(i + 2);
        MetadataRow row;
        row.record.template_id = f[0];
        row.record.subject_id = f[1];
        row.record.media_id = f[2];
        if (f[3] == "image") {
            row.record.kind = MediaKind::Image;
            if (!f[4].empty()) throw ParseError(where + ": image row must leave video_id empty");
        } else if (f[3] == "frame") {
            row.record.kind = MediaKind::VideoFrame;
            if (f[4].empty()) throw ParseError(where + ": frame row needs a video_id");
        } else {
            throw ParseError(where + ": kind must be 'image' or 'frame', got '" + f[3] + "'");
        }
        row.record.video_id = f[4];
        if (f[5] == "train") {
            row.split_role = SplitRole::Train;
        } else if (f[5] == "gallery") {
            row.split_role = SplitRole::Gallery;
        } else if (f[5] == "probe") {
            row.split_role = SplitRole::Probe;
        } else {
            throw ParseError(where + ": split_role must be train|gallery|probe, got '" + f[5] + "'");
        }
        const auto [ptr, ec] =
            std::from_chars(f[6].data(), f[6].data() + f[6].size(), row.split_id);
        if (ec != std::errc{} || ptr != f[6].data() + f[6].size()) {
            throw ParseError(where + ": split_id is not an integer: '" + f[6] + "'");
        }
        if (row.record.template_id.empty() || row.record.subject_id.empty() || row.record.media_id.empty()) {
            throw ParseError(where + ": template_id, subject_id and media_id must be non-empty");
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline void write_metadata_csv(const std::string& path, const std::vector<MetadataRow>& rows) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "template_id,subject_id,media_id,kind,video_id,split_role,split_id\n";
    for (const MetadataRow& row : rows) {
        detail::check_csv_field(row.record.template_id, "template_id");
        detail::check_csv_field(row.record.subject_id, "subject_id");
        detail::check_csv_field(row.record.media_id, "media_id");
        detail::check_csv_field(row.record.video_id, "video_id");
        os << row.record.template_id << ',' << row.record.subject_id << ',' << row.record.media_id << ','
           << (row.record.kind == MediaKind::Image ? "image" : "frame") << ',' << row.record.video_id
           << ',' << to_string(row.split_role) << ',' << row.split_id << '\n';
    }
    if (!os) throw IoError("write failed: " + path);
}

/// Optional 1:1 comparison list: header `template_id_a,template_id_b`.
/// Mated/non-mated labels are derived from the subject ids in the
/// metadata, so the pair file only names the comparisons.
inline std::vector<std::pair<std::string, std::string>> read_pairs_csv(const std::string& path) {
    const auto rows = detail::read_csv_rows(path, {"template_id_a", "template_id_b"});
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(rows.size());
    for (const auto& f : rows) out.emplace_back(f[0], f[1]);
    return out;
}

inline void write_pairs_csv(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "template_id_a,template_id_b\n";
    for (const auto& [a, b] : pairs) {
        detail::check_csv_field(a, "template_id_a");
        detail::check_csv_field(b, "template_id_b");
        os << a << ',' << b << '\n';
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace tdff::io

#endif  // TDFF_IO_METADATA_HPP
