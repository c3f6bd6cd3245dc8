#ifndef TDFF_SCORING_HPP
#define TDFF_SCORING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/media.hpp"
#include "tdff/svm.hpp"

namespace tdff {

/// Second-stage fusion parameter. beta == 0 reduces the fused score to
/// the arithmetic mean of the component scores.
struct FusionConfig {
    double beta = 0.0;

    void validate() const {
        if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("FusionConfig: beta must be finite and >= 0");
    }
};

/// Fused similarity of one template pair plus how many per-encoding
/// scores went into it (N_a * N_b).
struct PairScore {
    std::string probe_template;
    std::string gallery_template;
    double score = 0.0;
    std::size_t n_component_scores = 0;
};

/// One-shot similarity of two encodings: each side's template-specific
/// SVM judges the other side's encoding, and the two margins are
/// averaged. Symmetric by construction.
inline double oss_score(const SvmModel& model_p, const SvmModel& model_q, const EmbeddingVector& p,
                        const EmbeddingVector& q) {
    return 0.5 * decision_value(model_p, q) + 0.5 * decision_value(model_q, p);
}

/// Softmax-weighted mean: sum_i s_i exp(beta s_i) / sum_i exp(beta s_i).
/// Max-shifted so large beta cannot overflow; the result is clamped into
/// [min(scores), max(scores)], which the exact value always satisfies.
inline double fuse_scores(std::span<const double> scores, const FusionConfig& config) {
    config.validate();
    if (scores.empty()) throw EmptyScoresError();
    double lo = scores[0], hi = scores[0];
    for (double s : scores) {
        if (!std::isfinite(s)) throw Error("fuse_scores: non-finite score");
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    double num = 0.0, den = 0.0;
    for (double s : scores) {
        const double w = std::exp(config.beta * (s - hi));
        num += s * w;
        den += w;
    }
    return std::clamp(num / den, lo, hi);
}

/// Scores a template pair: one-shot similarity over the full cross
/// product of encodings, fused to a single scalar.
inline PairScore score_template_pair(const Template& a, const Template& b, const SvmModel& model_a,
                                     const SvmModel& model_b, const FusionConfig& config) {
    std::vector<double> components;
    components.reserve(a.encodings.size() * b.encodings.size());
    for (const MediaEncoding& ea : a.encodings) {
        for (const MediaEncoding& eb : b.encodings) {
            components.push_back(oss_score(model_a, model_b, ea.vector, eb.vector));
        }
    }
    PairScore out;
    out.probe_template = a.template_id;
    out.gallery_template = b.template_id;
    out.n_component_scores = components.size();
    out.score = fuse_scores(components, config);
    return out;
}

}  // namespace tdff

#endif  // TDFF_SCORING_HPP
