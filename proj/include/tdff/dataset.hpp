#ifndef TDFF_DATASET_HPP
#define TDFF_DATASET_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/fusion.hpp"
#include "tdff/io/metadata.hpp"
#include "tdff/media.hpp"

namespace tdff {

enum class IssueKind {
    MissingFeature,    ///< a record's media has no feature vector
    OrphanFeature,     ///< a feature vector has no record
    DimMismatch,       ///< vector dim differs from the declared dim
    NonFinite,         ///< vector contains NaN or Inf
    DuplicateMediaId,
    VideoSpansTemplates,
    GalleryProbeOverlap,
    MixedTemplate,
    UnresolvedPairTemplate,
};

inline const char* to_string(IssueKind k) {
    switch (k) {
        case IssueKind::MissingFeature: return "missing-feature";
        case IssueKind::OrphanFeature: return "orphan-feature";
        case IssueKind::DimMismatch: return "dimension-mismatch";
        case IssueKind::NonFinite: return "non-finite";
        case IssueKind::DuplicateMediaId: return "duplicate-media-id";
        case IssueKind::VideoSpansTemplates: return "video-spans-templates";
        case IssueKind::GalleryProbeOverlap: return "gallery-probe-overlap";
        case IssueKind::MixedTemplate: return "mixed-template";
        case IssueKind::UnresolvedPairTemplate: return "unresolved-pair-template";
    }
    return "?";
}

struct ValidationIssue {
    IssueKind kind;
    std::string message;

    bool operator<(const ValidationIssue& o) const {
        if (kind != o.kind) return kind < o.kind;
        return message < o.message;
    }
    bool operator==(const ValidationIssue& o) const = default;
};

/// All problems found by a validation pass. Issues are reported, never
/// thrown, and kept sorted so the report is independent of input order.
struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    void add(IssueKind kind, std::string message) { issues.push_back({kind, std::move(message)}); }

    void sort() { std::sort(issues.begin(), issues.end()); }

    void merge(ValidationReport other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
        sort();
    }
};

/**
 * @brief Cross-checks metadata records against one feature map.
 *
 * Reports records without features, features without records, dimension
 * mismatches against the declared dim, and non-finite values. Order
 * insensitive: permuting the records yields the same issue list.
 */
inline ValidationReport validate_dataset(const std::vector<MediaRecord>& records,
                                         const std::map<std::string, EmbeddingVector>& features,
                                         std::size_t declared_dim) {
    ValidationReport report;
    std::unordered_set<std::string> record_ids;
    record_ids.reserve(records.size());
    for (const MediaRecord& r : records) {
        if (!record_ids.insert(r.media_id).second) continue;  // duplicates are a metadata issue
        if (features.find(r.media_id) == features.end()) {
            report.add(IssueKind::MissingFeature, "media " + r.media_id + " has no feature vector");
        }
    }
    for (const auto& [media_id, vec] : features) {
        if (record_ids.find(media_id) == record_ids.end()) {
            report.add(IssueKind::OrphanFeature, "feature " + media_id + " has no metadata record");
        }
        if (vec.size() != declared_dim) {
            report.add(IssueKind::DimMismatch, "feature " + media_id + " has dim " +
                                                   std::to_string(vec.size()) + ", declared " +
                                                   std::to_string(declared_dim));
        }
        if (!all_finite(vec)) {
            report.add(IssueKind::NonFinite, "feature " + media_id + " contains NaN or Inf");
        }
    }
    report.sort();
    return report;
}

/// Structural checks across metadata rows, grouped per split: duplicate
/// media ids, videos spanning templates, templates mixing subjects or
/// roles, gallery/probe template overlap.
inline ValidationReport validate_metadata(const std::vector<io::MetadataRow>& rows) {
    ValidationReport report;
    std::map<int, std::vector<const io::MetadataRow*>> by_split;
    for (const auto& row : rows) by_split[row.split_id].push_back(&row);

    for (const auto& [split_id, split_rows] : by_split) {
        const std::string where = "split " + std::to_string(split_id) + ": ";
        std::unordered_set<std::string> media_seen;
        std::unordered_map<std::string, std::string> video_template;
        std::unordered_map<std::string, std::pair<std::string, io::SplitRole>> template_info;
        std::set<std::string> gallery_templates, probe_templates;
        for (const auto* rowp : split_rows) {
            const MediaRecord& r = rowp->record;
            if (!media_seen.insert(r.media_id).second) {
                report.add(IssueKind::DuplicateMediaId, where + "media " + r.media_id + " appears twice");
            }
            if (r.kind == MediaKind::VideoFrame) {
                auto [vit, vnew] = video_template.try_emplace(r.video_id, r.template_id);
                if (!vnew && vit->second != r.template_id) {
                    report.add(IssueKind::VideoSpansTemplates,
                               where + "video " + r.video_id + " appears in templates " + vit->second +
                                   " and " + r.template_id);
                }
            }
            auto [tit, tnew] =
                template_info.try_emplace(r.template_id, r.subject_id, rowp->split_role);
            if (!tnew) {
                if (tit->second.first != r.subject_id) {
                    report.add(IssueKind::MixedTemplate, where + "template " + r.template_id +
                                                             " maps to subjects " + tit->second.first +
                                                             " and " + r.subject_id);
                }
                if (tit->second.second != rowp->split_role) {
                    report.add(IssueKind::MixedTemplate,
                               where + "template " + r.template_id + " assigned to two roles");
                }
            }
            if (rowp->split_role == io::SplitRole::Gallery) gallery_templates.insert(r.template_id);
            if (rowp->split_role == io::SplitRole::Probe) probe_templates.insert(r.template_id);
        }
        for (const auto& t : gallery_templates) {
            if (probe_templates.count(t)) {
                report.add(IssueKind::GalleryProbeOverlap,
                           where + "template " + t + " is both gallery and probe");
            }
        }
    }
    report.sort();
    return report;
}

struct VerificationPair {
    std::string template_a;
    std::string template_b;
    bool mated = false;
};

/**
 * @brief One protocol split: template partitions plus the 1:1
 * comparison list.
 */
struct ProtocolSplit {
    int split_id = 0;
    std::vector<Template> training;
    std::vector<Template> gallery;
    std::vector<Template> probe;
    std::vector<VerificationPair> verification_pairs;

    const Template* find_template(const std::string& id) const {
        for (const auto* group : {&training, &gallery, &probe}) {
            for (const Template& t : *group) {
                if (t.template_id == id) return &t;
            }
        }
        return nullptr;
    }
};

/**
 * @brief Assembles protocol splits from metadata rows and fused media
 * features.
 *
 * Templates are built in first-appearance order. When no explicit pair
 * list is given, the 1:1 comparison list defaults to the full probe x
 * gallery cross product. Pair labels always come from subject ids.
 * Throws on structural violations; run the validators first for a
 * report instead of an exception.
 */
inline std::vector<ProtocolSplit> build_protocol_splits(
    const std::vector<io::MetadataRow>& rows,
    const std::unordered_map<std::string, EmbeddingVector>& fused,
    const std::vector<std::pair<std::string, std::string>>* pairs = nullptr) {
    ValidationReport structural = validate_metadata(rows);
    if (!structural.ok()) {
        throw Error("metadata is inconsistent: " + structural.issues.front().message + " (" +
                    std::to_string(structural.issues.size()) + " issue(s) total)");
    }

    std::map<int, std::vector<const io::MetadataRow*>> by_split;
    for (const auto& row : rows) by_split[row.split_id].push_back(&row);

    std::vector<bool> pair_resolved;
    if (pairs != nullptr) pair_resolved.assign(pairs->size(), false);

    std::vector<ProtocolSplit> splits;
    for (const auto& [split_id, split_rows] : by_split) {
        ProtocolSplit split;
        split.split_id = split_id;

        std::vector<std::string> template_order;
        std::unordered_map<std::string, std::vector<MediaRecord>> template_records;
        std::unordered_map<std::string, io::SplitRole> template_role;
        for (const auto* rowp : split_rows) {
            auto [it, inserted] = template_records.try_emplace(rowp->record.template_id);
            if (inserted) {
                template_order.push_back(rowp->record.template_id);
                template_role[rowp->record.template_id] = rowp->split_role;
            }
            it->second.push_back(rowp->record);
        }

        std::unordered_map<std::string, std::string> subject_of;
        for (const std::string& tid : template_order) {
            Template t = build_template(template_records.at(tid), fused);
            subject_of[tid] = t.subject_id;
            switch (template_role.at(tid)) {
                case io::SplitRole::Train: split.training.push_back(std::move(t)); break;
                case io::SplitRole::Gallery: split.gallery.push_back(std::move(t)); break;
                case io::SplitRole::Probe: split.probe.push_back(std::move(t)); break;
            }
        }

        if (pairs != nullptr) {
            for (std::size_t i = 0; i < pairs->size(); ++i) {
                const auto& [a, b] = (*pairs)[i];
                auto ia = subject_of.find(a);
                auto ib = subject_of.find(b);
                if (ia == subject_of.end() || ib == subject_of.end()) continue;  // pair of another split
                pair_resolved[i] = true;
                split.verification_pairs.push_back({a, b, ia->second == ib->second});
            }
        } else {
            for (const Template& p : split.probe) {
                for (const Template& g : split.gallery) {
                    split.verification_pairs.push_back(
                        {p.template_id, g.template_id, p.subject_id == g.subject_id});
                }
            }
        }
        splits.push_back(std::move(split));
    }

    if (pairs != nullptr) {
        for (std::size_t i = 0; i < pairs->size(); ++i) {
            if (!pair_resolved[i]) {
                throw Error("verification pair (" + (*pairs)[i].first + ", " + (*pairs)[i].second +
                            ") does not resolve within any split");
            }
        }
    }
    return splits;
}

}  // namespace tdff

#endif  // TDFF_DATASET_HPP
