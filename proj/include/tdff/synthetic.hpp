#ifndef TDFF_SYNTHETIC_HPP
#define TDFF_SYNTHETIC_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "tdff/detail/rng.hpp"
#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/io/feature_file.hpp"
#include "tdff/io/metadata.hpp"

namespace tdff {

/**
 * @brief Parameters of the synthetic embedding generator.
 *
 * Stands in for the upstream feature extractors at desk scale: each
 * subject is a unit-norm class mean drawn uniformly on the sphere, each
 * media vector is the mean plus isotropic gaussian noise (per-coordinate
 * std noise_sigma), renormalized.
 */
struct SyntheticSpec {
    std::size_t n_subjects = 50;
    std::size_t media_per_subject = 12;
    std::size_t frames_per_video = 3;
    std::size_t dim = 64;
    double noise_sigma = 0.3;
    std::uint64_t seed = 1;
    std::size_t n_splits = 1;  ///< independent protocol splits over the same subjects

    void validate() const {
        if (n_subjects < 1 || media_per_subject < 1 || frames_per_video < 1 || n_splits < 1) {
            throw ConfigError("SyntheticSpec: counts must be >= 1");
        }
        if (dim < 2) throw ConfigError("SyntheticSpec: dim must be >= 2");
        if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
            throw ConfigError("SyntheticSpec: noise_sigma must be finite and >= 0");
        }
    }
};

struct SyntheticDataset {
    std::vector<io::MetadataRow> metadata;
    io::FeatureMap features;
    std::size_t dim = 0;
};

namespace detail {

inline EmbeddingVector unit_gaussian_vector(Rng& rng, std::size_t dim) {
    EmbeddingVector v(dim);
    double norm2 = 0.0;
    do {
        for (std::size_t k = 0; k < dim; ++k) v[k] = rng.gaussian();
        norm2 = squared_norm(v);
    } while (norm2 <= kNormEpsilon);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

/// Features are persisted as float32; snapping in-memory values to that
/// precision keeps the in-memory and reloaded pipelines bit-identical.
inline EmbeddingVector snap_to_float32(EmbeddingVector v) {
    for (double& x : v) x = static_cast<double>(static_cast<float>(x));
    return v;
}

inline std::string zero_padded(std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
    return buf;
}

}  // namespace detail

/**
 * @brief Generates a clustered synthetic dataset.
 *
 * Per split, the subject list is rotated into a training half and an
 * evaluation half. Training subjects contribute one template with all
 * their media; every fifth evaluation subject is probe-only (its subject
 * never enrolls, giving the open-set protocol its non-mated probes), the
 * rest get one gallery and one probe template. Every third media of a
 * template is a video of frames_per_video frames. Deterministic given
 * the seed.
 */
inline SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    SyntheticDataset out;
    out.dim = spec.dim;

    detail::Rng mean_rng(detail::derive_seed(spec.seed, "synthetic-means", ""));
    std::vector<EmbeddingVector> means;
    means.reserve(spec.n_subjects);
    for (std::size_t s = 0; s < spec.n_subjects; ++s) {
        means.push_back(detail::unit_gaussian_vector(mean_rng, spec.dim));
    }

    const std::size_t n_train = spec.n_subjects / 2;

    for (std::size_t split = 1; split <= spec.n_splits; ++split) {
        detail::Rng rng(detail::derive_seed(spec.seed, "synthetic-split", std::to_string(split)));
        const std::size_t offset =
            spec.n_subjects > 0 ? ((split - 1) * n_train) % spec.n_subjects : 0;

        const auto draw_media = [&](const EmbeddingVector& mean) {
            EmbeddingVector v(spec.dim);
            double norm2 = 0.0;
            do {
                for (std::size_t k = 0; k < spec.dim; ++k) {
                    v[k] = mean[k] + spec.noise_sigma * rng.gaussian();
                }
                norm2 = squared_norm(v);
            } while (norm2 <= kNormEpsilon);
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : v) x *= inv;
            return detail::snap_to_float32(std::move(v));
        };

        // One template's media: local indices [first, first+count), every
        // third one a video.
        const auto emit_template = [&](std::size_t subject, const std::string& template_id,
                                       io::SplitRole role, std::size_t first, std::size_t count) {
            const std::string subject_id = "s" + detail::zero_padded(subject, 4);
            const std::string stem = "sp" + std::to_string(split) + "_s" + detail::zero_padded(subject, 4);
            for (std::size_t m = first; m < first + count; ++m) {
                io::MetadataRow row;
                row.split_id = static_cast<int>(split);
                row.split_role = role;
                row.record.template_id = template_id;
                row.record.subject_id = subject_id;
                if ((m - first) % 3 == 2) {
                    const std::string video_id = stem + "_v" + detail::zero_padded(m, 3);
                    for (std::size_t f = 0; f < spec.frames_per_video; ++f) {
                        io::MetadataRow frame = row;
                        frame.record.kind = MediaKind::VideoFrame;
                        frame.record.video_id = video_id;
                        frame.record.media_id = video_id + "_f" + detail::zero_padded(f, 3);
                        out.features.emplace(frame.record.media_id, draw_media(means[subject]));
                        out.metadata.push_back(std::move(frame));
                    }
                } else {
                    row.record.kind = MediaKind::Image;
                    row.record.media_id = stem + "_m" + detail::zero_padded(m, 3);
                    out.features.emplace(row.record.media_id, draw_media(means[subject]));
                    out.metadata.push_back(std::move(row));
                }
            }
        };

        for (std::size_t i = 0; i < spec.n_subjects; ++i) {
            const std::size_t subject = (offset + i) % spec.n_subjects;
            const std::string stem = "sp" + std::to_string(split) + "_s" + detail::zero_padded(subject, 4);
            if (i < n_train) {
                emit_template(subject, stem + "_train", io::SplitRole::Train, 0, spec.media_per_subject);
            } else {
                const std::size_t eval_index = i - n_train;
                const std::size_t probe_count = std::max<std::size_t>(1, spec.media_per_subject / 2);
                const bool nonmated = eval_index % 5 == 4;
                if (nonmated) {
                    emit_template(subject, stem + "_probe", io::SplitRole::Probe, 0, probe_count);
                } else {
                    const std::size_t gallery_count =
                        std::max<std::size_t>(1, spec.media_per_subject - probe_count);
                    emit_template(subject, stem + "_gal", io::SplitRole::Gallery, 0, gallery_count);
                    emit_template(subject, stem + "_probe", io::SplitRole::Probe, gallery_count,
                                  probe_count);
                }
            }
        }
    }
    return out;
}

}  // namespace tdff

#endif  // TDFF_SYNTHETIC_HPP
