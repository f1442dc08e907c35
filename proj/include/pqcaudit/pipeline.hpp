#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqcaudit/config.hpp"
#include "pqcaudit/enrichment.hpp"
#include "pqcaudit/report.hpp"
#include "pqcaudit/scanner.hpp"
#include "pqcaudit/vqe.hpp"

namespace pqcaudit {

// Effective, typed configuration of one audit run.
struct PipelineConfig {
    // [scan]
    std::string root = ".";
    std::string repo;  // empty: derived from the root directory name
    std::vector<std::string> exclude;
    std::vector<std::string> extensions;  // empty: built-in extension set
    std::string patterns_file;            // empty: built-in detector table
    long long max_file_bytes = static_cast<long long>(kDefaultMaxFileBytes);
    long long context_window = kDefaultContextWindow;
    long long workers = 1;

    // [enrichment]
    EnrichmentBackend backend = EnrichmentBackend::Heuristic;
    long long concurrency = 4;
    std::uint64_t seed = 0;
    BackoffPolicy backoff;

    // [remote]
    std::string remote_url;
    std::string remote_token;
    long long remote_timeout_seconds = 10;

    // [scoring]
    ScoringConstants constants;

    bool operator==(const PipelineConfig&) const = default;
};

// Carries every violation found in one validation pass, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues);
    std::vector<std::string> issues_;
};

// Checks every key of the parsed table against the schema (unknown keys,
// wrong types, out-of-range values, threshold ordering) and returns the typed
// config. Collects all violations into one ConfigError instead of stopping at
// the first.
PipelineConfig validate_config(const ConfigTable& table);

// AUDITOR_REMOTE_URL / AUDITOR_REMOTE_TOKEN override the file values.
// `getenv` is injectable for tests; pass {} for the process environment.
void apply_env_overrides(
    PipelineConfig& config,
    const std::function<const char*(const char*)>& getenv_fn = {});

// Sorted `key=value` lines of every fingerprint-relevant setting. Worker and
// concurrency counts, output destinations and the remote token are excluded:
// they cannot change findings, and the same analysis must fingerprint the
// same across machines that differ only in parallelism or secrets.
std::string canonical_config_text(const PipelineConfig& config);

// FNV-1a of canonical_config_text, as 16 hex digits.
std::string config_fingerprint(const PipelineConfig& config);

// scan -> enrich -> score -> report. generated_at is injected (the pipeline
// never reads a clock); remote may be a test double, otherwise an HTTP client
// is built from config when the remote backend is selected. Throws
// ConfigError when the remote backend lacks a URL, std::runtime_error on
// fatal I/O problems (unreadable root or patterns file).
Report run_pipeline(const PipelineConfig& config, const std::string& generated_at,
                    RemoteClassifier* remote = nullptr);

// Exit code policy: 0 clean, 1 when any entry bands CRITICAL.
// (2 = usage/config error, 3 = fatal I/O; assigned by the CLI.)
int exit_code_for(const Report& report);

}  // namespace pqcaudit
