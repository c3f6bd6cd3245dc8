#ifndef TDFF_MEDIA_HPP
#define TDFF_MEDIA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"

namespace tdff {

enum class MediaKind { Image, VideoFrame };

/**
 * @brief One row of dataset metadata: a single image or video frame.
 *
 * Identifiers are opaque strings; real metadata mixes numeric and
 * path-like keys. video_id is set iff kind == VideoFrame.
 */
struct MediaRecord {
    std::string media_id;
    MediaKind kind = MediaKind::Image;
    std::string video_id;  ///< empty unless kind == VideoFrame
    std::string template_id;
    std::string subject_id;
};

enum class EncodingSource { SingleImage, PooledVideo };

/**
 * @brief One unit-norm embedding for an image or a pooled video.
 *
 * The atom of a template: a single image keeps its media id, a video is
 * collapsed to the mean of its frame features (then renormalized) and
 * keeps the video id plus how many frames went into the pool.
 */
struct MediaEncoding {
    EncodingSource source = EncodingSource::SingleImage;
    std::string source_id;        ///< media_id for images, video_id for pooled videos
    std::uint32_t frame_count = 1;  ///< >= 1; number of pooled frames for videos
    EmbeddingVector vector;       ///< unit-norm
};

/**
 * @brief A labeled, ordered collection of media encodings for one subject.
 *
 * Encoding order is the order of first appearance in the metadata file,
 * which keeps downstream score fusion deterministic.
 */
struct Template {
    std::string template_id;
    std::string subject_id;
    std::vector<MediaEncoding> encodings;  ///< non-empty, each unit-norm

    std::size_t size() const { return encodings.size(); }
};

/// Checks the structural invariants of a constructed template.
/// Throws on violation; intended for assembly-time validation.
inline void check_template(const Template& t) {
    if (t.encodings.empty()) {
        throw EmptyTemplateError("template " + t.template_id + " has no encodings");
    }
    std::vector<std::string> seen_videos;
    for (const MediaEncoding& e : t.encodings) {
        if (!all_finite(e.vector)) {
            throw Error("template " + t.template_id + ": non-finite encoding " + e.source_id);
        }
        if (!is_unit_norm(e.vector)) {
            throw Error("template " + t.template_id + ": encoding " + e.source_id + " is not unit-norm");
        }
        if (e.frame_count < 1) {
            throw Error("template " + t.template_id + ": encoding " + e.source_id + " has frame_count 0");
        }
        if (e.source == EncodingSource::PooledVideo) {
            for (const std::string& v : seen_videos) {
                if (v == e.source_id) {
                    throw Error("template " + t.template_id + ": video " + v + " pooled twice");
                }
            }
            seen_videos.push_back(e.source_id);
        }
    }
}

}  // namespace tdff

#endif  // TDFF_MEDIA_HPP
