#ifndef TDFF_CONFIG_HPP
#define TDFF_CONFIG_HPP

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdff/errors.hpp"
#include "tdff/scoring.hpp"
#include "tdff/svm.hpp"
#include "tdff/synthetic.hpp"

namespace tdff {

struct StreamConfig {
    std::string name;
    std::string path;
    std::size_t dim = 0;
};

struct EvalConfig {
    std::vector<double> far_targets{0.001, 0.01, 0.1};
    std::vector<double> fpir_targets{0.01, 0.1};
    std::vector<std::size_t> cmc_ranks{1, 5, 10};
};

/**
 * @brief One declarative document driving every pipeline stage.
 *
 * All randomness flows from the seeds recorded here; there are no
 * hidden entropy sources.
 */
struct PipelineConfig {
    std::string metadata;
    std::vector<StreamConfig> streams;
    std::string pairs;  ///< optional 1:1 comparison list; empty -> probe x gallery
    std::string output_dir = "out";
    SolverConfig svm;
    FusionConfig fusion;
    EvalConfig eval;
    SyntheticSpec synthetic;
    bool persist_intermediates = false;
};

namespace detail {

inline void check_known_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                             const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (known.find(key) == known.end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

}  // namespace detail

inline PipelineConfig parse_pipeline_config(const nlohmann::json& j) {
    PipelineConfig cfg;
    detail::check_known_keys(j,
                             {"metadata", "streams", "pairs", "output_dir", "svm", "fusion", "eval",
                              "synthetic", "persist_intermediates"},
                             "config");
    cfg.metadata = j.value("metadata", std::string{});
    if (j.contains("streams")) {
        for (const auto& s : j.at("streams")) {
            detail::check_known_keys(s, {"name", "path", "dim"}, "config.streams[]");
            StreamConfig sc;
            sc.name = s.at("name").get<std::string>();
            sc.path = s.at("path").get<std::string>();
            sc.dim = s.at("dim").get<std::size_t>();
            if (sc.dim == 0) throw ConfigError("stream " + sc.name + ": dim must be > 0");
            cfg.streams.push_back(std::move(sc));
        }
    }
    cfg.pairs = j.value("pairs", std::string{});
    cfg.output_dir = j.value("output_dir", std::string{"out"});
    if (j.contains("svm")) {
        const auto& s = j.at("svm");
        detail::check_known_keys(s, {"C", "tolerance", "max_iterations", "seed"}, "config.svm");
        cfg.svm.C = s.value("C", cfg.svm.C);
        cfg.svm.tolerance = s.value("tolerance", cfg.svm.tolerance);
        cfg.svm.max_iterations = s.value("max_iterations", cfg.svm.max_iterations);
        cfg.svm.seed = s.value("seed", cfg.svm.seed);
        cfg.svm.validate();
    }
    if (j.contains("fusion")) {
        const auto& f = j.at("fusion");
        detail::check_known_keys(f, {"beta"}, "config.fusion");
        cfg.fusion.beta = f.value("beta", cfg.fusion.beta);
        cfg.fusion.validate();
    }
    if (j.contains("eval")) {
        const auto& e = j.at("eval");
        detail::check_known_keys(e, {"far_targets", "fpir_targets", "cmc_ranks"}, "config.eval");
        if (e.contains("far_targets")) cfg.eval.far_targets = e.at("far_targets").get<std::vector<double>>();
        if (e.contains("fpir_targets"))
            cfg.eval.fpir_targets = e.at("fpir_targets").get<std::vector<double>>();
        if (e.contains("cmc_ranks")) cfg.eval.cmc_ranks = e.at("cmc_ranks").get<std::vector<std::size_t>>();
        if (cfg.eval.cmc_ranks.empty()) throw ConfigError("config.eval: cmc_ranks must be non-empty");
    }
    if (j.contains("synthetic")) {
        const auto& s = j.at("synthetic");
        detail::check_known_keys(
            s, {"n_subjects", "media_per_subject", "frames_per_video", "dim", "noise_sigma", "seed", "n_splits"},
            "config.synthetic");
        cfg.synthetic.n_subjects = s.value("n_subjects", cfg.synthetic.n_subjects);
        cfg.synthetic.media_per_subject = s.value("media_per_subject", cfg.synthetic.media_per_subject);
        cfg.synthetic.frames_per_video = s.value("frames_per_video", cfg.synthetic.frames_per_video);
        cfg.synthetic.dim = s.value("dim", cfg.synthetic.dim);
        cfg.synthetic.noise_sigma = s.value("noise_sigma", cfg.synthetic.noise_sigma);
        cfg.synthetic.seed = s.value("seed", cfg.synthetic.seed);
        cfg.synthetic.n_splits = s.value("n_splits", cfg.synthetic.n_splits);
        cfg.synthetic.validate();
    }
    cfg.persist_intermediates = j.value("persist_intermediates", false);
    return cfg;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        return parse_pipeline_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace tdff

#endif  // TDFF_CONFIG_HPP
