// pqc_audit: post-quantum cryptography exposure auditor.
//
// Subcommands:
//   scan     walk a source tree, classify findings, score and report
//   sample   draw a stratified review sample from report files
//   metrics  precision/recall/F1 from a hand-labelled CSV
//   score    score one weight triple (calibration aid)
//
// Exit codes: 0 clean, 1 scan found a CRITICAL entry, 2 usage/config error,
// 3 fatal I/O error.

#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "pqcaudit/evaluation.hpp"
#include "pqcaudit/pipeline.hpp"
#include "pqcaudit/version.hpp"

namespace {

using nlohmann::json;
using namespace pqcaudit;

std::string now_utc_iso8601() {
    const std::time_t now = std::time(nullptr);
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Empty path means stdout.
void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out << text;
    if (!out) throw std::runtime_error(fmt::format("short write to '{}'", path));
}

json ratio_json(const Ratio& ratio) {
    json j{{"numerator", ratio.num}, {"denominator", ratio.den}};
    if (ratio.defined()) {
        j["value"] = ratio.value();
    } else {
        j["value"] = nullptr;
    }
    return j;
}

json metrics_json(const MetricsReport& metrics) {
    return json{{"counts",
                 {{"tp", metrics.tp},
                  {"fp_test", metrics.fp_test},
                  {"fp_context", metrics.fp_context},
                  {"fp_safe", metrics.fp_safe},
                  {"fn", metrics.fn}}},
                {"precision", ratio_json(metrics.precision)},
                {"recall", ratio_json(metrics.recall)},
                {"f1", ratio_json(metrics.f1)}};
}

struct ScanArgs {
    std::string config_path;
    std::string root = ".";
    std::string repo;
    std::vector<std::string> exclude;
    std::string patterns_file;
    std::string enrich;
    std::uint64_t seed = 0;
    long long jobs = 1;
    std::string timestamp;
    std::string out;
    std::string summary_path;
    std::string issues_path;
    std::string min_band = "LOW";
    bool print_config = false;
};

int run_scan(const ScanArgs& args, const CLI::App& cmd) {
    ConfigTable table;
    if (!args.config_path.empty()) table = load_config_file(args.config_path);
    PipelineConfig config = validate_config(table);

    if (cmd.count("--root") || args.config_path.empty()) config.root = args.root;
    if (cmd.count("--repo")) config.repo = args.repo;
    if (cmd.count("--exclude")) config.exclude = args.exclude;
    if (cmd.count("--patterns")) config.patterns_file = args.patterns_file;
    if (cmd.count("--enrich")) {
        const auto backend = enrichment_backend_from_string(args.enrich);
        if (!backend) {
            throw ConfigError({fmt::format(
                "--enrich: unknown backend '{}' (off, heuristic, remote)",
                args.enrich)});
        }
        config.backend = *backend;
    }
    if (cmd.count("--seed")) config.seed = args.seed;
    if (cmd.count("--jobs")) {
        if (args.jobs < 1) throw ConfigError({"--jobs: must be >= 1"});
        config.workers = args.jobs;
        config.concurrency = args.jobs;
    }
    apply_env_overrides(config);

    if (args.print_config) {
        std::cout << canonical_config_text(config)
                  << fmt::format("fingerprint={}\n", config_fingerprint(config));
        return 0;
    }

    const std::string generated_at =
        args.timestamp.empty() ? now_utc_iso8601() : args.timestamp;
    const Report report = run_pipeline(config, generated_at);

    const json report_json = report;
    write_text_output(args.out, report_json.dump(2) + "\n");

    if (!args.summary_path.empty() || args.out.empty()) {
        // Summary to file when asked; to stderr alongside a stdout report so
        // the JSON stream stays clean.
        const std::string summary = render_summary(report);
        if (!args.summary_path.empty()) {
            write_text_output(args.summary_path, summary);
        } else {
            std::cerr << summary;
        }
    }

    if (!args.issues_path.empty()) {
        const auto band = threat_band_from_string(args.min_band);
        if (!band) throw ConfigError({fmt::format("--min-band: unknown band '{}'",
                                                  args.min_band)});
        json issues = json::array();
        for (const Issue& issue : export_issues(report, *band)) {
            issues.push_back({{"title", issue.title}, {"body", issue.body}});
        }
        write_text_output(args.issues_path, issues.dump(2) + "\n");
    }

    return exit_code_for(report);
}

struct SampleArgs {
    std::vector<std::string> report_paths;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_sample(const SampleArgs& args) {
    std::vector<SampleUnit> units;
    for (const auto& path : args.report_paths) {
        const Report report = json::parse(read_text_file(path)).get<Report>();
        for (const auto& entry : report.entries) {
            units.push_back({entry.finding_id, report.repo,
                             std::string(to_string(entry.algorithm))});
        }
    }

    const SampleResult result = stratified_sample(units, args.rate, args.seed);

    json quotas = json::array();
    for (const auto& quota : result.quotas) {
        quotas.push_back({{"repo", quota.repo},
                          {"algorithm_class", quota.algorithm_class},
                          {"size", quota.size},
                          {"quota", quota.quota}});
    }
    const json out{{"rate", args.rate},
                   {"seed", args.seed},
                   {"population", units.size()},
                   {"selected_count", result.finding_ids.size()},
                   {"selected", result.finding_ids},
                   {"quotas", quotas}};
    write_text_output(args.out, out.dump(2) + "\n");

    if (!args.out.empty()) {
        write_text_output(args.out + ".quotas.json", quotas.dump(2) + "\n");
    }
    return 0;
}

struct MetricsArgs {
    std::string labels_path;
    bool per_algorithm = false;
    bool cleaned = false;
    std::string out;
};

int run_metrics(const MetricsArgs& args) {
    std::ifstream in(args.labels_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", args.labels_path));
    }
    const std::vector<LabelledFinding> labels = parse_labels_csv(in);

    json out = metrics_json(compute_metrics(labels));
    if (args.cleaned) {
        out["cleaned"] = metrics_json(cleaned_metrics(labels));
    }
    if (args.per_algorithm) {
        json rows = json::array();
        for (const auto& row : per_algorithm_precision(labels)) {
            rows.push_back({{"algorithm_class", row.algorithm_class},
                            {"tp", row.tp},
                            {"fp_non_test", row.fp_non_test},
                            {"precision", ratio_json(row.precision)}});
        }
        out["per_algorithm"] = rows;
    }
    write_text_output(args.out, out.dump(2) + "\n");
    return 0;
}

struct ScoreArgs {
    double shor = 0.0;
    double grover = 0.0;
    double interaction = 0.0;
};

int run_score(const ScoreArgs& args) {
    const ThreatWeights weights{args.shor, args.grover, args.interaction};
    const ThreatScore result = score_weights(weights);
    const json out{{"weights",
                    {{"shor", weights.shor},
                     {"grover", weights.grover},
                     {"interaction", weights.interaction}}},
                   {"energy", result.energy},
                   {"score", result.score},
                   {"band", to_string(result.band)},
                   {"theta", result.theta}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"post-quantum cryptography exposure auditor"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    ScanArgs scan_args;
    CLI::App* scan_cmd = app.add_subcommand("scan", "scan a source tree and report");
    scan_cmd->add_option("--root", scan_args.root, "directory to scan");
    scan_cmd->add_option("--repo", scan_args.repo, "repository name for the report");
    scan_cmd->add_option("--exclude", scan_args.exclude,
                         "glob(s) of paths to skip (repeatable)");
    scan_cmd->add_option("--patterns", scan_args.patterns_file,
                         "detector pattern file replacing the built-ins");
    scan_cmd->add_option("--enrich", scan_args.enrich,
                         "context backend: off, heuristic or remote");
    scan_cmd->add_option("--config", scan_args.config_path, "config file (TOML subset)");
    scan_cmd->add_option("--seed", scan_args.seed, "enrichment jitter seed");
    scan_cmd->add_option("--jobs", scan_args.jobs, "worker threads for scan + enrich");
    scan_cmd->add_option("--timestamp", scan_args.timestamp,
                         "report generated_at override (for reproducible output)");
    scan_cmd->add_option("--out", scan_args.out, "report JSON path (default stdout)");
    scan_cmd->add_option("--summary", scan_args.summary_path,
                         "write the human-readable summary here");
    scan_cmd->add_option("--issues", scan_args.issues_path,
                         "write importable issue JSON here");
    scan_cmd->add_option("--min-band", scan_args.min_band,
                         "lowest band exported to --issues")
        ->check(CLI::IsMember({"CRITICAL", "HIGH", "MEDIUM", "LOW"}));
    scan_cmd->add_flag("--print-config", scan_args.print_config,
                       "print the effective config and fingerprint, then exit");

    SampleArgs sample_args;
    CLI::App* sample_cmd =
        app.add_subcommand("sample", "stratified review sample from reports");
    sample_cmd->add_option("--findings", sample_args.report_paths,
                           "report JSON file(s)")
        ->required();
    sample_cmd->add_option("--rate", sample_args.rate, "sampling rate in (0, 1]")
        ->required();
    sample_cmd->add_option("--seed", sample_args.seed, "sampling seed");
    sample_cmd->add_option("--out", sample_args.out,
                           "sample JSON path (default stdout); also writes "
                           "<out>.quotas.json");

    MetricsArgs metrics_args;
    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "evaluation metrics from labelled findings");
    metrics_cmd->add_option("--labels", metrics_args.labels_path,
                            "CSV with finding_id,label[,repo,algorithm_class]")
        ->required();
    metrics_cmd->add_flag("--per-algorithm", metrics_args.per_algorithm,
                          "include per-class precision");
    metrics_cmd->add_flag("--cleaned", metrics_args.cleaned,
                          "include metrics with test-path hits removed");
    metrics_cmd->add_option("--out", metrics_args.out, "output path (default stdout)");

    ScoreArgs score_args;
    CLI::App* score_cmd =
        app.add_subcommand("score", "score one Hamiltonian weight triple");
    score_cmd->add_option("--shor", score_args.shor, "Shor-path weight");
    score_cmd->add_option("--grover", score_args.grover, "Grover-path weight");
    score_cmd->add_option("--interaction", score_args.interaction,
                          "coupling term (non-positive deepens the threat)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (scan_cmd->parsed()) return run_scan(scan_args, *scan_cmd);
        if (sample_cmd->parsed()) return run_sample(sample_args);
        if (metrics_cmd->parsed()) return run_metrics(metrics_args);
        if (score_cmd->parsed()) return run_score(score_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
