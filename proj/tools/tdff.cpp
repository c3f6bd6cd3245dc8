// Command-line driver for the recognition pipeline. Each subcommand runs
// one stage so intermediate artifacts can be produced and inspected
// independently; `run` executes the whole pipeline.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tdff/tdff.hpp"

namespace {

struct Cli {
    std::string config_path;
    unsigned threads = tdff::detail::default_thread_count();
    bool verbose = false;
};

void add_common_options(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--config", cli.config_path, "Path to the pipeline config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--threads", cli.threads, "Worker threads (default: available parallelism)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--verbose", cli.verbose, "Log stage progress to stderr");
}

int do_validate(const Cli& cli) {
    const auto cfg = tdff::load_pipeline_config(cli.config_path);
    const tdff::ValidationReport report = tdff::run_validate(cfg);
    for (const auto& issue : report.issues) {
        std::fprintf(stderr, "%s: %s\n", tdff::to_string(issue.kind), issue.message.c_str());
    }
    if (report.ok()) {
        std::printf("ok: metadata and %zu stream(s) are consistent\n", cfg.streams.size());
        return 0;
    }
    std::fprintf(stderr, "[validate] %zu issue(s) found\n", report.issues.size());
    return 1;
}

int do_run(const Cli& cli) {
    const auto cfg = tdff::load_pipeline_config(cli.config_path);
    tdff::PipelineOptions opts{cli.threads, cli.verbose};
    const tdff::MetricReport report = tdff::run_pipeline(cfg, opts);
    tdff::io::write_report_text(std::cout, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transferred deep feature fusion recognition stage"};
    app.require_subcommand(1);

    Cli cli;
    auto* validate = app.add_subcommand("validate", "Cross-check metadata, features and pairs");
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    auto* fuse = app.add_subcommand("fuse", "Fuse per-stream features into fused.tdff");
    auto* train = app.add_subcommand("train", "Train template-specific SVMs");
    auto* score = app.add_subcommand("score", "Score verification pairs and the probe x gallery grid");
    auto* eval = app.add_subcommand("eval", "Evaluate persisted scores into a metric report");
    auto* run = app.add_subcommand("run", "Run the full pipeline end to end");
    for (auto* cmd : {validate, synth, fuse, train, score, eval, run}) add_common_options(cmd, cli);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return do_validate(cli);
        const auto cfg = tdff::load_pipeline_config(cli.config_path);
        tdff::PipelineOptions opts{cli.threads, cli.verbose};
        if (synth->parsed()) {
            tdff::run_synth(cfg);
            std::printf("wrote %s and %s\n", cfg.metadata.c_str(), cfg.streams.front().path.c_str());
        } else if (fuse->parsed()) {
            tdff::run_fuse(cfg);
        } else if (train->parsed()) {
            tdff::run_train(cfg, opts);
        } else if (score->parsed()) {
            tdff::run_score(cfg, opts);
        } else if (eval->parsed()) {
            const tdff::MetricReport report = tdff::run_eval(cfg, opts);
            tdff::io::write_report_text(std::cout, report);
        } else if (run->parsed()) {
            return do_run(cli);
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
