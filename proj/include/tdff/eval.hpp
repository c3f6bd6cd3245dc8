#ifndef TDFF_EVAL_HPP
#define TDFF_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdff/errors.hpp"

namespace tdff {

struct RocPoint {
    double threshold = 0.0;
    double far = 0.0;
    double tar = 0.0;
};

/// Closed- and open-set identification numbers for one split.
struct IdentificationResult {
    std::vector<double> cmc;                 ///< rank-k accuracy, k = 1..K, non-decreasing
    std::map<double, double> tpir_at_fpir;   ///< FPIR target -> TPIR
};

/// Per-split metric values plus mean / sample std across splits.
struct MetricReport {
    struct SplitMetrics {
        int split_id = 0;
        std::map<std::string, double> values;
    };
    struct MeanStd {
        double mean = 0.0;
        double std = 0.0;
    };

    std::vector<SplitMetrics> per_split;
    std::map<std::string, MeanStd> aggregate;
};

/// Scores of one probe against gallery templates.
using GalleryScores = std::vector<std::pair<std::string, double>>;
/// probe template id -> its gallery scores.
using ScoreTable = std::map<std::string, GalleryScores>;

namespace detail {

// Candidate thresholds are the distinct observed scores; a +inf sentinel
// covers the case where no finite threshold meets the target. Step
// semantics throughout: counts are integers, no interpolation.
inline std::vector<double> threshold_candidates(std::span<const double> a, std::span<const double> b) {
    std::vector<double> c;
    c.reserve(a.size() + b.size() + 1);
    c.insert(c.end(), a.begin(), a.end());
    c.insert(c.end(), b.begin(), b.end());
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    c.push_back(std::numeric_limits<double>::infinity());
    return c;
}

// #(scores >= t) for ascending-sorted scores.
inline std::size_t count_at_or_above(const std::vector<double>& sorted_asc, double t) {
    return static_cast<std::size_t>(sorted_asc.end() -
                                    std::lower_bound(sorted_asc.begin(), sorted_asc.end(), t));
}

}  // namespace detail

/**
 * @brief Verification TAR at fixed FAR targets.
 *
 * For each target f, the threshold is the smallest candidate value whose
 * false accept rate is <= f; the true accept rate is evaluated at that
 * threshold. Candidates are the observed scores of both lists.
 */
inline std::vector<std::pair<double, double>> tar_at_far(std::span<const double> genuine,
                                                         std::span<const double> impostor,
                                                         std::span<const double> far_targets) {
    if (genuine.empty() || impostor.empty()) throw EmptyScoresError("tar_at_far: empty score list");
    for (double f : far_targets) {
        if (!(f > 0.0) || f > 1.0) throw Error("tar_at_far: FAR target must be in (0, 1]");
    }
    std::vector<double> gen(genuine.begin(), genuine.end());
    std::vector<double> imp(impostor.begin(), impostor.end());
    std::sort(gen.begin(), gen.end());
    std::sort(imp.begin(), imp.end());
    const std::vector<double> candidates = detail::threshold_candidates(genuine, impostor);

    std::vector<std::pair<double, double>> out;
    out.reserve(far_targets.size());
    for (double target : far_targets) {
        double tar = 0.0;
        for (double t : candidates) {
            const double far = static_cast<double>(detail::count_at_or_above(imp, t)) /
                               static_cast<double>(imp.size());
            if (far <= target) {
                tar = static_cast<double>(detail::count_at_or_above(gen, t)) /
                      static_cast<double>(gen.size());
                break;
            }
        }
        out.emplace_back(target, tar);
    }
    return out;
}

/// Full step-function ROC, one point per distinct score (ascending
/// threshold). Used for curve export; far and tar are non-increasing.
inline std::vector<RocPoint> roc_curve(std::span<const double> genuine,
                                       std::span<const double> impostor) {
    if (genuine.empty() || impostor.empty()) throw EmptyScoresError("roc_curve: empty score list");
    std::vector<double> gen(genuine.begin(), genuine.end());
    std::vector<double> imp(impostor.begin(), impostor.end());
    std::sort(gen.begin(), gen.end());
    std::sort(imp.begin(), imp.end());
    std::vector<double> candidates = detail::threshold_candidates(genuine, impostor);
    candidates.pop_back();  // drop the +inf sentinel for curve output
    std::vector<RocPoint> out;
    out.reserve(candidates.size());
    for (double t : candidates) {
        RocPoint pt;
        pt.threshold = t;
        pt.far = static_cast<double>(detail::count_at_or_above(imp, t)) / static_cast<double>(imp.size());
        pt.tar = static_cast<double>(detail::count_at_or_above(gen, t)) / static_cast<double>(gen.size());
        out.push_back(pt);
    }
    return out;
}

namespace detail {

// Gallery entries are ranked by score descending, ties broken by gallery
// template id ascending.
inline bool ranks_before(const std::pair<std::string, double>& a,
                         const std::pair<std::string, double>& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
}

}  // namespace detail

/**
 * @brief Closed-set CMC: rank-k accuracy for k = 1..K.
 *
 * A probe counts at rank k when its best-ranked mated gallery template
 * sits within the top k. Every probe must have a mate in the gallery.
 */
inline std::vector<double> cmc_curve(const ScoreTable& probe_scores,
                                     const std::map<std::string, std::string>& truth,
                                     const std::map<std::string, std::string>& gallery_subjects,
                                     std::size_t K) {
    if (probe_scores.empty()) throw EmptyScoresError("cmc_curve: no probes");
    if (K < 1) throw Error("cmc_curve: K must be >= 1");
    std::vector<std::size_t> ranks;
    ranks.reserve(probe_scores.size());
    for (const auto& [probe_id, entries] : probe_scores) {
        auto truth_it = truth.find(probe_id);
        if (truth_it == truth.end()) throw Error("cmc_curve: no subject for probe " + probe_id);
        const std::string& subject = truth_it->second;

        const std::pair<std::string, double>* best_mate = nullptr;
        for (const auto& entry : entries) {
            auto git = gallery_subjects.find(entry.first);
            if (git == gallery_subjects.end()) {
                throw Error("cmc_curve: unknown gallery template " + entry.first);
            }
            if (git->second != subject) continue;
            if (best_mate == nullptr || detail::ranks_before(entry, *best_mate)) best_mate = &entry;
        }
        if (best_mate == nullptr) {
            throw MissingMateError("probe " + probe_id + " has no mated gallery template");
        }
        std::size_t rank = 1;
        for (const auto& entry : entries) {
            if (&entry != best_mate && detail::ranks_before(entry, *best_mate)) ++rank;
        }
        ranks.push_back(rank);
    }
    std::vector<double> cmc(K, 0.0);
    for (std::size_t k = 1; k <= K; ++k) {
        std::size_t hits = 0;
        for (std::size_t r : ranks) hits += r <= k ? 1 : 0;
        cmc[k - 1] = static_cast<double>(hits) / static_cast<double>(ranks.size());
    }
    return cmc;
}

/**
 * @brief Open-set TPIR at fixed FPIR targets.
 *
 * FPIR counts non-mated probes whose top gallery score clears the
 * threshold; TPIR counts mated probes whose mate is at rank 1 with score
 * above it. The threshold is the smallest candidate meeting the target.
 */
inline std::map<double, double> open_set_metrics(const ScoreTable& probe_scores,
                                                 const std::map<std::string, std::string>& truth,
                                                 const std::map<std::string, std::string>& gallery_subjects,
                                                 std::span<const double> fpir_targets) {
    if (probe_scores.empty()) throw EmptyScoresError("open_set_metrics: no probes");
    std::set<std::string> enrolled;
    for (const auto& [g, s] : gallery_subjects) enrolled.insert(s);

    std::vector<double> nonmated_top;
    std::vector<std::pair<double, bool>> mated_top;  // (top score, mate at rank 1)
    for (const auto& [probe_id, entries] : probe_scores) {
        if (entries.empty()) throw EmptyScoresError("open_set_metrics: probe " + probe_id + " has no scores");
        auto truth_it = truth.find(probe_id);
        if (truth_it == truth.end()) throw Error("open_set_metrics: no subject for probe " + probe_id);
        const std::string& subject = truth_it->second;

        const std::pair<std::string, double>* top = &entries.front();
        for (const auto& entry : entries) {
            if (detail::ranks_before(entry, *top)) top = &entry;
        }
        const auto top_subject = gallery_subjects.find(top->first);
        if (top_subject == gallery_subjects.end()) {
            throw Error("open_set_metrics: unknown gallery template " + top->first);
        }
        if (enrolled.count(subject) == 0) {
            nonmated_top.push_back(top->second);
        } else {
            mated_top.emplace_back(top->second, top_subject->second == subject);
        }
    }
    if (nonmated_top.empty()) throw NoNonMatedProbesError();
    if (mated_top.empty()) throw Error("open_set_metrics: no mated probes");

    std::vector<double> all_top = nonmated_top;
    for (const auto& [s, hit] : mated_top) all_top.push_back(s);
    std::sort(nonmated_top.begin(), nonmated_top.end());
    const std::vector<double> candidates = detail::threshold_candidates(all_top, {});

    std::map<double, double> out;
    for (double target : fpir_targets) {
        if (!(target > 0.0) || target > 1.0) throw Error("open_set_metrics: FPIR target must be in (0, 1]");
        double tpir = 0.0;
        for (double t : candidates) {
            const double fpir = static_cast<double>(detail::count_at_or_above(nonmated_top, t)) /
                                static_cast<double>(nonmated_top.size());
            if (fpir <= target) {
                std::size_t hits = 0;
                for (const auto& [s, hit] : mated_top) hits += (hit && s >= t) ? 1 : 0;
                tpir = static_cast<double>(hits) / static_cast<double>(mated_top.size());
                break;
            }
        }
        out[target] = tpir;
    }
    return out;
}

/// Mean and sample standard deviation (n-1 denominator) per metric key
/// across splits. A single split reports std 0.
inline MetricReport aggregate_splits(std::vector<MetricReport::SplitMetrics> per_split) {
    if (per_split.empty()) throw Error("aggregate_splits: no splits");
    MetricReport report;
    report.per_split = std::move(per_split);
    const auto& keys = report.per_split.front().values;
    for (const auto& split : report.per_split) {
        if (split.values.size() != keys.size()) {
            throw KeyMismatchError("split " + std::to_string(split.split_id) + " has different metric keys");
        }
        for (const auto& [k, v] : keys) {
            if (split.values.find(k) == split.values.end()) {
                throw KeyMismatchError("split " + std::to_string(split.split_id) + " lacks metric " + k);
            }
        }
    }
    const std::size_t n = report.per_split.size();
    for (const auto& [key, first_value] : keys) {
        // Welford's online mean/variance.
        double mean = 0.0, m2 = 0.0;
        std::size_t count = 0;
        for (const auto& split : report.per_split) {
            const double v = split.values.at(key);
            ++count;
            const double d1 = v - mean;
            mean += d1 / static_cast<double>(count);
            m2 += d1 * (v - mean);
        }
        MetricReport::MeanStd ms;
        ms.mean = mean;
        ms.std = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
        report.aggregate[key] = ms;
    }
    return report;
}

}  // namespace tdff

#endif  // TDFF_EVAL_HPP
