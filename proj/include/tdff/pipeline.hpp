#ifndef TDFF_PIPELINE_HPP
#define TDFF_PIPELINE_HPP

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdff/config.hpp"
#include "tdff/dataset.hpp"
#include "tdff/detail/parallel.hpp"
#include "tdff/detail/rng.hpp"
#include "tdff/eval.hpp"
#include "tdff/fusion.hpp"
#include "tdff/io/feature_file.hpp"
#include "tdff/io/metadata.hpp"
#include "tdff/io/model_file.hpp"
#include "tdff/io/report.hpp"
#include "tdff/io/scores_file.hpp"
#include "tdff/scoring.hpp"
#include "tdff/svm.hpp"
#include "tdff/synthetic.hpp"

namespace tdff {

struct PipelineOptions {
    unsigned threads = detail::default_thread_count();
    bool verbose = false;
};

namespace detail {

inline void log(const PipelineOptions& opts, const std::string& msg) {
    if (opts.verbose) std::fprintf(stderr, "tdff: %s\n", msg.c_str());
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string("[") + name + "] " + e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stage building blocks. Each one is also reachable from its own CLI
// subcommand, so intermediate artifacts can be inspected and the staged
// and in-memory paths must agree bit-exactly.
// ---------------------------------------------------------------------------

inline FeatureStreamSpec stream_spec_from_config(const PipelineConfig& cfg) {
    if (cfg.streams.empty()) throw ConfigError("config: at least one stream is required");
    std::vector<FeatureStreamSpec::Stream> streams;
    for (const auto& s : cfg.streams) streams.push_back({s.name, s.dim});
    return make_stream_spec(std::move(streams));
}

/// Loads every stream's feature file, checking the header dim against
/// the declared stream dim.
inline std::vector<io::FeatureMap> load_stream_features(const PipelineConfig& cfg) {
    std::vector<io::FeatureMap> out;
    out.reserve(cfg.streams.size());
    for (const auto& s : cfg.streams) {
        io::FeatureFileContents contents = io::read_feature_file(s.path);
        if (contents.dim != s.dim) {
            throw DimMismatchError("stream " + s.name + ": file dim " + std::to_string(contents.dim) +
                                   " != declared dim " + std::to_string(s.dim));
        }
        out.push_back(std::move(contents.features));
    }
    return out;
}

/**
 * @brief First-stage fusion over all media in the metadata.
 *
 * Per stream the raw feature is unit-normalized, the streams are
 * concatenated, and the result is normalized again. Values are then
 * snapped to float32 precision, the storage format of fused feature
 * files, so a persisted-and-reloaded fused map is bit-identical to the
 * in-memory one.
 */
inline std::unordered_map<std::string, EmbeddingVector> fuse_media_features(
    const std::vector<io::MetadataRow>& rows, const std::vector<io::FeatureMap>& stream_features,
    const FeatureStreamSpec& spec) {
    std::unordered_map<std::string, EmbeddingVector> fused;
    fused.reserve(rows.size());
    for (const auto& row : rows) {
        const std::string& media_id = row.record.media_id;
        if (fused.count(media_id)) continue;
        std::vector<EmbeddingVector> parts;
        parts.reserve(stream_features.size());
        for (std::size_t s = 0; s < stream_features.size(); ++s) {
            auto it = stream_features[s].find(media_id);
            if (it == stream_features[s].end()) {
                throw MissingFeatureError("media " + media_id + " missing from stream " +
                                          spec.streams[s].name);
            }
            parts.push_back(l2_normalize(it->second));
        }
        EmbeddingVector v = l2_normalize(concat_streams(parts, spec));
        fused.emplace(media_id, detail::snap_to_float32(std::move(v)));
    }
    return fused;
}

/// Models of one split. Verification and identification probes share the
/// training-only negative rule, gallery templates add the other gallery
/// templates to their negatives.
struct SplitModels {
    std::map<std::string, SvmModel> training_only;
    std::map<std::string, SvmModel> gallery;
};

inline constexpr int kRoleTrainingOnly = 0;
inline constexpr int kRoleGallery = 1;

inline io::ModelBundle to_bundle(const SplitModels& models) {
    io::ModelBundle bundle;
    for (const auto& [id, m] : models.training_only) bundle.emplace(std::make_pair(kRoleTrainingOnly, id), m);
    for (const auto& [id, m] : models.gallery) bundle.emplace(std::make_pair(kRoleGallery, id), m);
    return bundle;
}

inline SplitModels from_bundle(io::ModelBundle bundle) {
    SplitModels models;
    for (auto& [key, m] : bundle) {
        if (key.first == kRoleTrainingOnly) {
            models.training_only.emplace(key.second, std::move(m));
        } else if (key.first == kRoleGallery) {
            models.gallery.emplace(key.second, std::move(m));
        } else {
            throw ParseError("model bundle: unknown role tag " + std::to_string(key.first));
        }
    }
    return models;
}

/**
 * @brief Trains every template-specific SVM a split needs.
 *
 * Training-only models cover all templates referenced by verification
 * pairs plus all identification probes; gallery models cover the gallery.
 * Jobs run in parallel; each derives its seed from the config seed, the
 * negative rule and the template id, so the result does not depend on
 * the worker count.
 */
inline SplitModels train_split_models(const ProtocolSplit& split, const SolverConfig& solver,
                                      const PipelineOptions& opts) {
    std::set<std::string> training_only_ids;
    for (const auto& pair : split.verification_pairs) {
        training_only_ids.insert(pair.template_a);
        training_only_ids.insert(pair.template_b);
    }
    for (const Template& t : split.probe) training_only_ids.insert(t.template_id);

    struct Job {
        const Template* target;
        bool gallery_rule;
    };
    std::vector<Job> jobs;
    for (const std::string& id : training_only_ids) {
        const Template* t = split.find_template(id);
        if (t == nullptr) throw Error("verification pair references unknown template " + id);
        jobs.push_back({t, false});
    }
    for (const Template& t : split.gallery) jobs.push_back({&t, true});

    std::vector<SvmModel> trained(jobs.size());
    detail::parallel_for(jobs.size(), opts.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        const auto role = job.gallery_rule ? NegativeSetRole::GalleryTemplate
                                           : NegativeSetRole::VerificationProbe;
        std::vector<MediaEncoding> negatives =
            build_negative_set(role, *job.target, split.training, split.gallery);
        TrainingProblem problem =
            make_training_problem(job.target->encodings, std::move(negatives), solver.C);
        SolverConfig job_config = solver;
        job_config.seed = detail::derive_seed(solver.seed, job.gallery_rule ? "gallery" : "training-only",
                                              job.target->template_id);
        trained[i] = train_template_svm(problem, job_config, job.target->template_id);
    });

    SplitModels models;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& dst = jobs[i].gallery_rule ? models.gallery : models.training_only;
        dst.emplace(jobs[i].target->template_id, std::move(trained[i]));
    }
    return models;
}

struct SplitScores {
    std::vector<PairScore> verification;    ///< ordered by (probe, gallery) id
    std::vector<PairScore> identification;  ///< ordered by (probe, gallery) id
};

/// Scores the 1:1 comparison list and the full probe x gallery grid.
/// Results are gathered into identifier order before use.
inline SplitScores score_split(const ProtocolSplit& split, const SplitModels& models,
                               const FusionConfig& fusion, const PipelineOptions& opts) {
    SplitScores out;

    const auto model_of = [](const std::map<std::string, SvmModel>& pool, const std::string& id,
                             const char* role) -> const SvmModel& {
        auto it = pool.find(id);
        if (it == pool.end()) {
            throw Error(std::string("no ") + role + " model for template " + id + "; run train first");
        }
        return it->second;
    };

    out.verification.resize(split.verification_pairs.size());
    detail::parallel_for(split.verification_pairs.size(), opts.threads, [&](std::size_t i) {
        const VerificationPair& pair = split.verification_pairs[i];
        const Template* a = split.find_template(pair.template_a);
        const Template* b = split.find_template(pair.template_b);
        if (a == nullptr || b == nullptr) {
            throw Error("verification pair references unknown template " +
                        (a == nullptr ? pair.template_a : pair.template_b));
        }
        out.verification[i] =
            score_template_pair(*a, *b, model_of(models.training_only, a->template_id, "training-only"),
                                model_of(models.training_only, b->template_id, "training-only"), fusion);
    });

    out.identification.resize(split.probe.size() * split.gallery.size());
    detail::parallel_for(out.identification.size(), opts.threads, [&](std::size_t i) {
        const Template& p = split.probe[i / split.gallery.size()];
        const Template& g = split.gallery[i % split.gallery.size()];
        out.identification[i] =
            score_template_pair(p, g, model_of(models.training_only, p.template_id, "training-only"),
                                model_of(models.gallery, g.template_id, "gallery"), fusion);
    });

    const auto by_ids = [](const PairScore& x, const PairScore& y) {
        if (x.probe_template != y.probe_template) return x.probe_template < y.probe_template;
        return x.gallery_template < y.gallery_template;
    };
    std::sort(out.verification.begin(), out.verification.end(), by_ids);
    std::sort(out.identification.begin(), out.identification.end(), by_ids);
    return out;
}

/// Everything eval produces for one split: flat metric values plus the
/// exportable curves.
struct SplitEvaluation {
    MetricReport::SplitMetrics metrics;
    std::vector<RocPoint> verification_roc;
    std::vector<double> identification_cmc;
};

/**
 * @brief Computes verification and identification metrics for one split.
 *
 * Needs only the score lists and the template -> subject / role maps, so
 * the staged path (scores reloaded from CSV) evaluates identically to
 * the in-memory path.
 */
inline SplitEvaluation evaluate_split(const std::vector<PairScore>& verification_scores,
                                      const std::vector<PairScore>& identification_scores,
                                      const std::map<std::string, std::string>& template_subject,
                                      const std::map<std::string, std::string>& gallery_subjects,
                                      const EvalConfig& eval_cfg, const PipelineOptions& opts) {
    SplitEvaluation out;

    const auto subject_of = [&template_subject](const std::string& id) -> const std::string& {
        auto it = template_subject.find(id);
        if (it == template_subject.end()) throw Error("no subject for template " + id);
        return it->second;
    };

    if (!verification_scores.empty()) {
        std::vector<double> genuine, impostor;
        for (const PairScore& s : verification_scores) {
            (subject_of(s.probe_template) == subject_of(s.gallery_template) ? genuine : impostor)
                .push_back(s.score);
        }
        if (genuine.empty() || impostor.empty()) {
            throw Error("verification pairs must include both mated and non-mated comparisons");
        }
        for (const auto& [target, tar] : tar_at_far(genuine, impostor, eval_cfg.far_targets)) {
            out.metrics.values["verification.tar@far=" + io::format_g(target)] = tar;
        }
        out.verification_roc = roc_curve(genuine, impostor);
    }

    if (!identification_scores.empty()) {
        ScoreTable table;
        for (const PairScore& s : identification_scores) {
            table[s.probe_template].emplace_back(s.gallery_template, s.score);
        }
        std::set<std::string> enrolled;
        for (const auto& [g, subj] : gallery_subjects) enrolled.insert(subj);

        ScoreTable mated_table;
        std::map<std::string, std::string> truth;
        bool has_nonmated = false;
        for (const auto& [probe_id, entries] : table) {
            const std::string& subj = subject_of(probe_id);
            truth[probe_id] = subj;
            if (enrolled.count(subj)) {
                mated_table[probe_id] = entries;
            } else {
                has_nonmated = true;
            }
        }
        if (mated_table.empty()) throw Error("identification needs at least one mated probe");

        std::size_t K = 1;
        for (std::size_t k : eval_cfg.cmc_ranks) K = std::max(K, k);
        out.identification_cmc = cmc_curve(mated_table, truth, gallery_subjects, K);
        for (std::size_t k : eval_cfg.cmc_ranks) {
            out.metrics.values["identification.cmc.rank" + std::to_string(k)] =
                out.identification_cmc[k - 1];
        }

        if (has_nonmated) {
            const auto tpir = open_set_metrics(table, truth, gallery_subjects, eval_cfg.fpir_targets);
            for (const auto& [target, value] : tpir) {
                out.metrics.values["identification.tpir@fpir=" + io::format_g(target)] = value;
            }
        } else {
            detail::log(opts, "no non-mated probes; open-set metrics skipped");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CLI-facing stage drivers. Artifact naming under output_dir:
//   fused.tdff, models_split<k>.bin,
//   verification_scores_split<k>.csv, identification_scores_split<k>.csv,
//   verification_roc_split<k>.csv, identification_cmc_split<k>.csv,
//   report.txt, report.json
// ---------------------------------------------------------------------------

namespace detail {

inline std::string out_path(const PipelineConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

inline void ensure_output_dir(const PipelineConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
}

inline std::vector<std::pair<std::string, std::string>> load_pairs_if_set(const PipelineConfig& cfg,
                                                                          bool* have_pairs) {
    if (cfg.metadata.empty()) throw ConfigError("config: metadata path is required");
    *have_pairs = !cfg.pairs.empty();
    return *have_pairs ? io::read_pairs_csv(cfg.pairs) : std::vector<std::pair<std::string, std::string>>{};
}

inline std::vector<ProtocolSplit> build_splits_stage(
    const PipelineConfig& cfg, const std::vector<io::MetadataRow>& rows,
    const std::unordered_map<std::string, EmbeddingVector>& fused) {
    bool have_pairs = false;
    const auto pairs = load_pairs_if_set(cfg, &have_pairs);
    return stage("build", [&] { return build_protocol_splits(rows, fused, have_pairs ? &pairs : nullptr); });
}

inline std::map<std::string, std::string> subjects_of_rows(const std::vector<io::MetadataRow>& rows,
                                                           int split_id) {
    std::map<std::string, std::string> out;
    for (const auto& row : rows) {
        if (row.split_id == split_id) out.emplace(row.record.template_id, row.record.subject_id);
    }
    return out;
}

inline std::map<std::string, std::string> gallery_subjects_of_rows(
    const std::vector<io::MetadataRow>& rows, int split_id) {
    std::map<std::string, std::string> out;
    for (const auto& row : rows) {
        if (row.split_id == split_id && row.split_role == io::SplitRole::Gallery) {
            out.emplace(row.record.template_id, row.record.subject_id);
        }
    }
    return out;
}

}  // namespace detail

/// Runs every validation check the dataset supports: structural metadata
/// checks plus per-stream record/feature cross-checks.
inline ValidationReport run_validate(const PipelineConfig& cfg) {
    if (cfg.metadata.empty()) throw ConfigError("config: metadata path is required");
    const auto rows = io::read_metadata_csv(cfg.metadata);
    ValidationReport report = validate_metadata(rows);

    std::vector<MediaRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) records.push_back(row.record);

    for (const auto& s : cfg.streams) {
        io::FeatureFileContents contents = io::read_feature_file(s.path);
        ValidationReport stream_report = validate_dataset(records, contents.features, s.dim);
        for (auto& issue : stream_report.issues) {
            issue.message = "stream " + s.name + ": " + issue.message;
        }
        report.merge(std::move(stream_report));
    }

    if (!cfg.pairs.empty()) {
        std::set<std::string> known;
        for (const auto& row : rows) known.insert(row.record.template_id);
        for (const auto& [a, b] : io::read_pairs_csv(cfg.pairs)) {
            for (const std::string& id : {a, b}) {
                if (!known.count(id)) {
                    report.add(IssueKind::UnresolvedPairTemplate, "pair template " + id + " not in metadata");
                }
            }
        }
        report.sort();
    }
    return report;
}

/// Generates the synthetic dataset and writes the metadata CSV plus one
/// stream feature file.
inline void run_synth(const PipelineConfig& cfg) {
    detail::stage("synth", [&] {
        if (cfg.streams.size() != 1) {
            throw ConfigError("synth writes a single stream; configure exactly one");
        }
        if (cfg.streams.front().dim != cfg.synthetic.dim) {
            throw ConfigError("synth: stream dim " + std::to_string(cfg.streams.front().dim) +
                              " != synthetic dim " + std::to_string(cfg.synthetic.dim));
        }
        SyntheticDataset data = generate_synthetic(cfg.synthetic);
        io::write_metadata_csv(cfg.metadata, data.metadata);
        io::write_feature_file(cfg.streams.front().path, data.features,
                               static_cast<std::uint32_t>(data.dim));
        return 0;
    });
}

/// Fuses the configured streams and writes fused.tdff.
inline void run_fuse(const PipelineConfig& cfg) {
    detail::stage("fuse", [&] {
        const auto rows = io::read_metadata_csv(cfg.metadata);
        const FeatureStreamSpec spec = stream_spec_from_config(cfg);
        const auto streams = load_stream_features(cfg);
        const auto fused = fuse_media_features(rows, streams, spec);
        detail::ensure_output_dir(cfg);
        io::FeatureMap ordered(fused.begin(), fused.end());
        io::write_feature_file(detail::out_path(cfg, "fused.tdff"), ordered,
                               static_cast<std::uint32_t>(spec.fused_dim));
        return 0;
    });
}

namespace detail {

inline std::unordered_map<std::string, EmbeddingVector> load_fused(const PipelineConfig& cfg) {
    const std::string path = out_path(cfg, "fused.tdff");
    io::FeatureFileContents contents = io::read_feature_file(path);
    return {contents.features.begin(), contents.features.end()};
}

}  // namespace detail

/// Trains all split models from the persisted fused features.
inline void run_train(const PipelineConfig& cfg, const PipelineOptions& opts = {}) {
    const auto rows = io::read_metadata_csv(cfg.metadata);
    const auto fused = detail::stage("train", [&] { return detail::load_fused(cfg); });
    const auto splits = detail::build_splits_stage(cfg, rows, fused);
    detail::stage("train", [&] {
        for (const ProtocolSplit& split : splits) {
            detail::log(opts, "training split " + std::to_string(split.split_id));
            SplitModels models = train_split_models(split, cfg.svm, opts);
            io::write_model_bundle(
                detail::out_path(cfg, "models_split" + std::to_string(split.split_id) + ".bin"),
                to_bundle(models));
        }
        return 0;
    });
}

/// Scores all splits from persisted fused features and model bundles.
inline void run_score(const PipelineConfig& cfg, const PipelineOptions& opts = {}) {
    const auto rows = io::read_metadata_csv(cfg.metadata);
    const auto fused = detail::stage("score", [&] { return detail::load_fused(cfg); });
    const auto splits = detail::build_splits_stage(cfg, rows, fused);
    detail::stage("score", [&] {
        for (const ProtocolSplit& split : splits) {
            const std::string k = std::to_string(split.split_id);
            SplitModels models =
                from_bundle(io::read_model_bundle(detail::out_path(cfg, "models_split" + k + ".bin")));
            SplitScores scores = score_split(split, models, cfg.fusion, opts);
            io::write_scores_csv(detail::out_path(cfg, "verification_scores_split" + k + ".csv"),
                                 scores.verification);
            io::write_scores_csv(detail::out_path(cfg, "identification_scores_split" + k + ".csv"),
                                 scores.identification);
        }
        return 0;
    });
}

/// Evaluates persisted score files and writes the metric report and
/// curve CSVs.
inline MetricReport run_eval(const PipelineConfig& cfg, const PipelineOptions& opts = {}) {
    return detail::stage("eval", [&] {
        const auto rows = io::read_metadata_csv(cfg.metadata);
        std::set<int> split_ids;
        for (const auto& row : rows) split_ids.insert(row.split_id);

        std::vector<MetricReport::SplitMetrics> per_split;
        for (int split_id : split_ids) {
            const std::string k = std::to_string(split_id);
            const auto verification =
                io::read_scores_csv(detail::out_path(cfg, "verification_scores_split" + k + ".csv"));
            const auto identification =
                io::read_scores_csv(detail::out_path(cfg, "identification_scores_split" + k + ".csv"));
            SplitEvaluation ev = evaluate_split(verification, identification,
                                                detail::subjects_of_rows(rows, split_id),
                                                detail::gallery_subjects_of_rows(rows, split_id),
                                                cfg.eval, opts);
            ev.metrics.split_id = split_id;
            if (!ev.verification_roc.empty()) {
                io::write_roc_csv(detail::out_path(cfg, "verification_roc_split" + k + ".csv"),
                                  ev.verification_roc);
            }
            if (!ev.identification_cmc.empty()) {
                io::write_cmc_csv(detail::out_path(cfg, "identification_cmc_split" + k + ".csv"),
                                  ev.identification_cmc);
            }
            per_split.push_back(std::move(ev.metrics));
        }
        MetricReport report = aggregate_splits(std::move(per_split));
        io::write_report_text(detail::out_path(cfg, "report.txt"), report);
        io::write_report_json(detail::out_path(cfg, "report.json"), report);
        return report;
    });
}

/**
 * @brief End-to-end run: validate, fuse, build templates, train, score,
 * evaluate, aggregate.
 *
 * Works in memory but writes the same score and report artifacts as the
 * staged path, plus fused features and model bundles when
 * persist_intermediates is set. Deterministic given the config seeds,
 * independent of the thread count.
 */
inline MetricReport run_pipeline(const PipelineConfig& cfg, const PipelineOptions& opts = {}) {
    const auto rows = detail::stage("load", [&] { return io::read_metadata_csv(cfg.metadata); });
    const FeatureStreamSpec spec = stream_spec_from_config(cfg);
    const auto streams = detail::stage("load", [&] { return load_stream_features(cfg); });

    detail::stage("validate", [&] {
        ValidationReport report = validate_metadata(rows);
        std::vector<MediaRecord> records;
        records.reserve(rows.size());
        for (const auto& row : rows) records.push_back(row.record);
        for (std::size_t s = 0; s < streams.size(); ++s) {
            report.merge(validate_dataset(records, streams[s], cfg.streams[s].dim));
        }
        if (!report.ok()) {
            throw Error(std::to_string(report.issues.size()) + " validation issue(s); first: " +
                        to_string(report.issues.front().kind) + ": " + report.issues.front().message);
        }
        return 0;
    });

    const auto fused = detail::stage("fuse", [&] { return fuse_media_features(rows, streams, spec); });
    detail::ensure_output_dir(cfg);
    if (cfg.persist_intermediates) {
        io::FeatureMap ordered(fused.begin(), fused.end());
        io::write_feature_file(detail::out_path(cfg, "fused.tdff"), ordered,
                               static_cast<std::uint32_t>(spec.fused_dim));
    }

    const auto splits = detail::build_splits_stage(cfg, rows, fused);

    std::vector<MetricReport::SplitMetrics> per_split;
    for (const ProtocolSplit& split : splits) {
        const std::string k = std::to_string(split.split_id);
        detail::log(opts, "split " + k + ": " + std::to_string(split.training.size()) + " train, " +
                              std::to_string(split.gallery.size()) + " gallery, " +
                              std::to_string(split.probe.size()) + " probe templates");

        const SplitModels models =
            detail::stage("train", [&] { return train_split_models(split, cfg.svm, opts); });
        if (cfg.persist_intermediates) {
            io::write_model_bundle(detail::out_path(cfg, "models_split" + k + ".bin"), to_bundle(models));
        }

        const SplitScores scores =
            detail::stage("score", [&] { return score_split(split, models, cfg.fusion, opts); });
        io::write_scores_csv(detail::out_path(cfg, "verification_scores_split" + k + ".csv"),
                             scores.verification);
        io::write_scores_csv(detail::out_path(cfg, "identification_scores_split" + k + ".csv"),
                             scores.identification);

        SplitEvaluation ev = detail::stage("eval", [&] {
            return evaluate_split(scores.verification, scores.identification,
                                  detail::subjects_of_rows(rows, split.split_id),
                                  detail::gallery_subjects_of_rows(rows, split.split_id), cfg.eval, opts);
        });
        ev.metrics.split_id = split.split_id;
        if (!ev.verification_roc.empty()) {
            io::write_roc_csv(detail::out_path(cfg, "verification_roc_split" + k + ".csv"),
                              ev.verification_roc);
        }
        if (!ev.identification_cmc.empty()) {
            io::write_cmc_csv(detail::out_path(cfg, "identification_cmc_split" + k + ".csv"),
                              ev.identification_cmc);
        }
        per_split.push_back(std::move(ev.metrics));
    }

    MetricReport report = detail::stage("eval", [&] { return aggregate_splits(std::move(per_split)); });
    io::write_report_text(detail::out_path(cfg, "report.txt"), report);
    io::write_report_json(detail::out_path(cfg, "report.json"), report);
    return report;
}

}  // namespace tdff

#endif  // TDFF_PIPELINE_HPP
