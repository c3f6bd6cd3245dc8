#ifndef TDFF_FUSION_HPP
#define TDFF_FUSION_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/media.hpp"

namespace tdff {

/**
 * @brief Ordered list of feature extractor streams and the fused dimension.
 *
 * Fused vectors are the concatenation of the per-stream features, so
 * fused_dim is always the sum of the stream dims.
 */
struct FeatureStreamSpec {
    struct Stream {
        std::string name;
        std::size_t dim = 0;
    };

    std::vector<Stream> streams;
    std::size_t fused_dim = 0;
};

inline FeatureStreamSpec make_stream_spec(std::vector<FeatureStreamSpec::Stream> streams) {
    if (streams.empty()) throw ConfigError("stream spec needs at least one stream");
    FeatureStreamSpec spec;
    spec.streams = std::move(streams);
    for (const auto& s : spec.streams) {
        if (s.dim == 0) throw ConfigError("stream " + s.name + " has dim 0");
        spec.fused_dim += s.dim;
    }
    return spec;
}

/// Scales v to unit Euclidean norm. Direction is preserved.
/// Throws ZeroVectorError when the norm is below kNormEpsilon, which
/// signals a degenerate embedding upstream.
inline EmbeddingVector l2_normalize(const EmbeddingVector& v) {
    const double n = l2_norm(v);
    if (!std::isfinite(n)) throw Error("l2_normalize: non-finite input");
    if (n <= kNormEpsilon) throw ZeroVectorError();
    EmbeddingVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
    return out;
}

/// Concatenates per-stream features in stream order. The result is not
/// normalized; callers normalize after concatenation.
inline EmbeddingVector concat_streams(const std::vector<EmbeddingVector>& parts,
                                      const FeatureStreamSpec& spec) {
    if (parts.size() != spec.streams.size()) {
        throw DimMismatchError("concat_streams: " + std::to_string(parts.size()) + " parts for " +
                               std::to_string(spec.streams.size()) + " streams");
    }
    EmbeddingVector out;
    out.reserve(spec.fused_dim);
    for (std::size_t s = 0; s < parts.size(); ++s) {
        if (parts[s].size() != spec.streams[s].dim) {
            throw DimMismatchError("concat_streams: stream " + spec.streams[s].name + " expects dim " +
                                   std::to_string(spec.streams[s].dim) + ", got " +
                                   std::to_string(parts[s].size()));
        }
        out.insert(out.end(), parts[s].begin(), parts[s].end());
    }
    return out;
}

namespace detail {

// Pairwise (tree) accumulation of frames[lo, hi) into a fresh vector.
inline EmbeddingVector pairwise_sum(const std::vector<EmbeddingVector>& frames, std::size_t lo,
                                    std::size_t hi) {
    if (hi - lo == 1) return frames[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    EmbeddingVector left = pairwise_sum(frames, lo, mid);
    const EmbeddingVector right = pairwise_sum(frames, mid, hi);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

}  // namespace detail

/// Elementwise arithmetic mean of the frame features of one video.
/// The caller unit-normalizes the result before it enters a template.
inline EmbeddingVector pool_video(const std::vector<EmbeddingVector>& frames) {
    if (frames.empty()) throw EmptyVideoError();
    const std::size_t d = frames.front().size();
    for (const auto& f : frames) {
        if (f.size() != d) {
            throw DimMismatchError("pool_video: frame dim " + std::to_string(f.size()) + " vs " +
                                   std::to_string(d));
        }
        if (!all_finite(f)) throw Error("pool_video: non-finite frame");
    }
    EmbeddingVector mean = detail::pairwise_sum(frames, 0, frames.size());
    const double inv = 1.0 / static_cast<double>(frames.size());
    for (double& x : mean) x *= inv;
    if (l2_norm(mean) <= kNormEpsilon) {
        throw ZeroVectorError("pool_video: frame mean is the zero vector");
    }
    return mean;
}

/**
 * @brief Assembles one template from its media records and fused features.
 *
 * Produces one encoding per image and one per distinct video (its frames
 * pooled, then renormalized). Encoding order follows first appearance in
 * the record list. All records must agree on template and subject ids.
 */
inline Template build_template(const std::vector<MediaRecord>& records,
                               const std::unordered_map<std::string, EmbeddingVector>& fused) {
    if (records.empty()) throw EmptyTemplateError("build_template: no records");
    Template out;
    out.template_id = records.front().template_id;
    out.subject_id = records.front().subject_id;

    const auto feature_of = [&fused](const std::string& media_id) -> const EmbeddingVector& {
        auto it = fused.find(media_id);
        if (it == fused.end()) throw MissingFeatureError("no feature for media " + media_id);
        return it->second;
    };

    std::unordered_map<std::string, std::vector<EmbeddingVector>> video_frames;
    for (const MediaRecord& r : records) {
        if (r.template_id != out.template_id || r.subject_id != out.subject_id) {
            throw MixedTemplateError("records mix " + out.template_id + "/" + out.subject_id + " with " +
                                     r.template_id + "/" + r.subject_id);
        }
        if (r.kind == MediaKind::VideoFrame) {
            if (r.video_id.empty()) throw ParseError("frame " + r.media_id + " lacks video_id");
            video_frames[r.video_id].push_back(feature_of(r.media_id));
        }
    }

    std::vector<std::string> videos_done;
    for (const MediaRecord& r : records) {
        if (r.kind == MediaKind::Image) {
            MediaEncoding e;
            e.source = EncodingSource::SingleImage;
            e.source_id = r.media_id;
            e.frame_count = 1;
            e.vector = l2_normalize(feature_of(r.media_id));
            out.encodings.push_back(std::move(e));
        } else {
            bool done = false;
            for (const auto& v : videos_done) done = done || v == r.video_id;
            if (done) continue;
            videos_done.push_back(r.video_id);
            const auto& frames = video_frames.at(r.video_id);
            MediaEncoding e;
            e.source = EncodingSource::PooledVideo;
            e.source_id = r.video_id;
            e.frame_count = static_cast<std::uint32_t>(frames.size());
            e.vector = l2_normalize(pool_video(frames));
            out.encodings.push_back(std::move(e));
        }
    }

    check_template(out);
    return out;
}

}  // namespace tdff

#endif  // TDFF_FUSION_HPP
