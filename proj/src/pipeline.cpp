#include "pqcaudit/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <utility>

#include <fmt/core.h>

#include "pqcaudit/remote_client.hpp"
#include "pqcaudit/util.hpp"
#include "pqcaudit/version.hpp"

namespace pqcaudit {

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

std::string ConfigError::join(const std::vector<std::string>& issues) {
    std::string out = fmt::format("invalid configuration ({} issue(s))", issues.size());
    for (const auto& issue : issues) {
        out += "\n  - ";
        out += issue;
    }
    return out;
}

namespace {

// Pulls typed values out of the parsed table, recording a violation for every
// wrong type and every unknown key rather than stopping at the first.
class SchemaReader {
public:
    explicit SchemaReader(const ConfigTable& table) : table_(table) {}

    template <typename T>
    void read(const std::string& key, T& target, const char* type_name) {
        const auto it = table_.find(key);
        if (it == table_.end()) return;
        consumed_.insert(key);
        if (const T* value = std::get_if<T>(&it->second)) {
            target = *value;
        } else {
            issues_.push_back(fmt::format("{}: expected {}", key, type_name));
        }
    }

    void read_number(const std::string& key, double& target) {
        const auto it = table_.find(key);
        if (it == table_.end()) return;
        consumed_.insert(key);
        if (const double* real = std::get_if<double>(&it->second)) {
            target = *real;
        } else if (const long long* integer = std::get_if<long long>(&it->second)) {
            target = static_cast<double>(*integer);
        } else {
            issues_.push_back(fmt::format("{}: expected number", key));
        }
    }

    void finish_unknown_keys() {
        for (const auto& [key, value] : table_) {
            if (!consumed_.contains(key)) {
                issues_.push_back(fmt::format("{}: unknown key", key));
            }
        }
    }

    void add_issue(std::string issue) { issues_.push_back(std::move(issue)); }
    std::vector<std::string> take_issues() { return std::move(issues_); }

private:
    const ConfigTable& table_;
    std::set<std::string> consumed_;
    std::vector<std::string> issues_;
};

void require(SchemaReader& reader, bool ok, std::string_view key,
             std::string_view constraint) {
    if (!ok) reader.add_issue(fmt::format("{}: {}", key, constraint));
}

}  // namespace

PipelineConfig validate_config(const ConfigTable& table) {
    PipelineConfig config;
    SchemaReader reader(table);

    reader.read<std::string>("scan.root", config.root, "string");
    reader.read<std::string>("scan.repo", config.repo, "string");
    reader.read<std::vector<std::string>>("scan.exclude", config.exclude,
                                          "string array");
    reader.read<std::vector<std::string>>("scan.extensions", config.extensions,
                                          "string array");
    reader.read<std::string>("scan.patterns_file", config.patterns_file, "string");
    reader.read<long long>("scan.max_file_bytes", config.max_file_bytes, "integer");
    reader.read<long long>("scan.context_window", config.context_window, "integer");
    reader.read<long long>("scan.workers", config.workers, "integer");

    std::string backend_name(to_string(config.backend));
    reader.read<std::string>("enrichment.backend", backend_name, "string");
    if (const auto backend = enrichment_backend_from_string(backend_name)) {
        config.backend = *backend;
    } else {
        reader.add_issue(fmt::format(
            "enrichment.backend: unknown backend '{}' (off, heuristic, remote)",
            backend_name));
    }
    reader.read<long long>("enrichment.concurrency", config.concurrency, "integer");
    long long seed = static_cast<long long>(config.seed);
    reader.read<long long>("enrichment.seed", seed, "integer");
    require(reader, seed >= 0, "enrichment.seed", "must be >= 0");
    config.seed = seed >= 0 ? static_cast<std::uint64_t>(seed) : 0;

    reader.read_number("enrichment.backoff.base_seconds", config.backoff.base_seconds);
    reader.read_number("enrichment.backoff.max_seconds", config.backoff.max_seconds);
    reader.read_number("enrichment.backoff.jitter_fraction",
                       config.backoff.jitter_fraction);
    long long max_attempts = config.backoff.max_attempts;
    reader.read<long long>("enrichment.backoff.max_attempts", max_attempts, "integer");

    reader.read<std::string>("remote.url", config.remote_url, "string");
    reader.read<std::string>("remote.token", config.remote_token, "string");
    reader.read<long long>("remote.timeout_seconds", config.remote_timeout_seconds,
                           "integer");

    auto& c = config.constants;
    reader.read_number("scoring.shor_weight_cap", c.shor_weight_cap);
    reader.read_number("scoring.grover_weight_cap", c.grover_weight_cap);
    reader.read_number("scoring.interaction_magnitude", c.interaction_magnitude);
    reader.read_number("scoring.reference_qubits", c.reference_qubits);
    reader.read_number("scoring.energy_scale", c.energy_scale);
    reader.read_number("scoring.critical_threshold", c.critical_threshold);
    reader.read_number("scoring.high_threshold", c.high_threshold);
    reader.read_number("scoring.medium_threshold", c.medium_threshold);

    reader.finish_unknown_keys();

    require(reader, config.max_file_bytes >= 1, "scan.max_file_bytes", "must be >= 1");
    require(reader, config.context_window >= 0, "scan.context_window",
            "must be >= 0");
    require(reader, config.workers >= 1, "scan.workers", "must be >= 1");
    require(reader, config.concurrency >= 1, "enrichment.concurrency",
            "must be >= 1");
    require(reader, config.backoff.base_seconds > 0,
            "enrichment.backoff.base_seconds", "must be > 0");
    require(reader, config.backoff.max_seconds >= config.backoff.base_seconds,
            "enrichment.backoff.max_seconds", "must be >= base_seconds");
    require(reader,
            config.backoff.jitter_fraction >= 0 && config.backoff.jitter_fraction < 1,
            "enrichment.backoff.jitter_fraction", "must sit in [0, 1)");
    require(reader, max_attempts >= 1 && max_attempts <= 64,
            "enrichment.backoff.max_attempts", "must sit in [1, 64]");
    config.backoff.max_attempts = static_cast<int>(max_attempts);
    require(reader, config.remote_timeout_seconds >= 1, "remote.timeout_seconds",
            "must be >= 1");
    require(reader, c.shor_weight_cap >= 0, "scoring.shor_weight_cap",
            "must be >= 0");
    require(reader, c.grover_weight_cap >= 0, "scoring.grover_weight_cap",
            "must be >= 0");
    require(reader, c.interaction_magnitude >= 0, "scoring.interaction_magnitude",
            "must be >= 0");
    require(reader, c.reference_qubits > 0, "scoring.reference_qubits",
            "must be > 0");
    require(reader, c.energy_scale > 0, "scoring.energy_scale", "must be > 0");
    require(reader,
            c.critical_threshold >= c.high_threshold &&
                c.high_threshold >= c.medium_threshold && c.medium_threshold >= 0,
            "scoring thresholds", "must satisfy critical >= high >= medium >= 0");
    for (const auto& ext : config.extensions) {
        require(reader, !ext.empty() && ext.front() == '.', "scan.extensions",
                fmt::format("entry '{}' must start with '.'", ext));
    }

    auto issues = reader.take_issues();
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return config;
}

void apply_env_overrides(PipelineConfig& config,
                         const std::function<const char*(const char*)>& getenv_fn) {
    const auto get = [&](const char* name) -> const char* {
        return getenv_fn ? getenv_fn(name) : std::getenv(name);
    };
    if (const char* url = get("AUDITOR_REMOTE_URL")) config.remote_url = url;
    if (const char* token = get("AUDITOR_REMOTE_TOKEN")) config.remote_token = token;
}

std::string canonical_config_text(const PipelineConfig& config) {
    // std::map keeps the rendering sorted by key. Worker/concurrency counts,
    // the remote token and output destinations never enter.
    ConfigTable canon;
    canon.emplace("enrichment.backend", std::string(to_string(config.backend)));
    canon.emplace("enrichment.backoff.base_seconds", config.backoff.base_seconds);
    canon.emplace("enrichment.backoff.jitter_fraction",
                  config.backoff.jitter_fraction);
    canon.emplace("enrichment.backoff.max_attempts",
                  static_cast<long long>(config.backoff.max_attempts));
    canon.emplace("enrichment.backoff.max_seconds", config.backoff.max_seconds);
    canon.emplace("enrichment.seed", static_cast<long long>(config.seed));
    canon.emplace("remote.timeout_seconds", config.remote_timeout_seconds);
    canon.emplace("remote.url", config.remote_url);
    canon.emplace("scan.context_window", config.context_window);
    canon.emplace("scan.exclude", config.exclude);
    canon.emplace("scan.extensions", config.extensions);
    canon.emplace("scan.max_file_bytes", config.max_file_bytes);
    canon.emplace("scan.patterns_file", config.patterns_file);
    canon.emplace("scan.repo", config.repo);
    canon.emplace("scan.root", config.root);
    canon.emplace("scoring.critical_threshold", config.constants.critical_threshold);
    canon.emplace("scoring.energy_scale", config.constants.energy_scale);
    canon.emplace("scoring.grover_weight_cap", config.constants.grover_weight_cap);
    canon.emplace("scoring.high_threshold", config.constants.high_threshold);
    canon.emplace("scoring.interaction_magnitude",
                  config.constants.interaction_magnitude);
    canon.emplace("scoring.medium_threshold", config.constants.medium_threshold);
    canon.emplace("scoring.reference_qubits", config.constants.reference_qubits);
    canon.emplace("scoring.shor_weight_cap", config.constants.shor_weight_cap);

    std::string out;
    for (const auto& [key, value] : canon) {
        out += key;
        out.push_back('=');
        out += render_config_value(value);
        out.push_back('\n');
    }
    return out;
}

std::string config_fingerprint(const PipelineConfig& config) {
    return to_hex(fnv1a64(canonical_config_text(config)));
}

namespace {

// Scores one file's findings: weights are built per finding, with the
// interaction term switched on when the file mixes both attack paths.
std::vector<ThreatScore> score_findings(const std::vector<EnrichedFinding>& findings,
                                        const ScoringConstants& constants) {
    std::map<std::string_view, std::pair<bool, bool>> file_paths;  // (shor, grover)
    for (const auto& enriched : findings) {
        const AttackPath path = profile_for(enriched.finding.algorithm).path;
        auto& flags = file_paths[enriched.finding.file];
        if (path == AttackPath::Shor) {
            flags.first = true;
        } else {
            flags.second = true;  // Grover and KeyExposure share the Grover qubit
        }
    }

    std::vector<ThreatScore> scores;
    scores.reserve(findings.size());
    for (const auto& enriched : findings) {
        const AlgorithmProfile& profile = profile_for(enriched.finding.algorithm);
        const auto& flags = file_paths[enriched.finding.file];
        const bool cross = flags.first && flags.second;
        const ThreatWeights weights = weights_for(profile, cross, constants);
        scores.push_back(score_weights(weights, {}, constants));
    }
    return scores;
}

}  // namespace

Report run_pipeline(const PipelineConfig& config, const std::string& generated_at,
                    RemoteClassifier* remote) {
    namespace fs = std::filesystem;

    std::error_code ec;
    if (!fs::is_directory(config.root, ec)) {
        throw std::runtime_error(
            fmt::format("scan root '{}' is not a directory", config.root));
    }

    ScanConfig scan_config;
    scan_config.root = config.root;
    scan_config.repo = config.repo.empty()
                           ? fs::absolute(config.root).lexically_normal().filename().string()
                           : config.repo;
    if (scan_config.repo.empty()) {
        scan_config.repo = fs::absolute(config.root).parent_path().filename().string();
    }
    scan_config.exclude_globs = config.exclude;
    if (!config.extensions.empty()) {
        scan_config.eligible_extensions =
            std::set<std::string>(config.extensions.begin(), config.extensions.end());
    }
    scan_config.context_window = static_cast<int>(config.context_window);
    scan_config.max_file_bytes = static_cast<std::size_t>(config.max_file_bytes);
    scan_config.threads = static_cast<int>(config.workers);

    const std::vector<PatternClass> patterns = config.patterns_file.empty()
                                                   ? default_patterns()
                                                   : load_patterns_file(config.patterns_file);

    const ScanResult scan = scan_tree(scan_config, patterns);

    std::unique_ptr<HttpRemoteClassifier> owned_remote;
    if (config.backend == EnrichmentBackend::Remote && remote == nullptr) {
        if (config.remote_url.empty()) {
            throw ConfigError({"remote.url: required when enrichment.backend is "
                               "'remote' (or set AUDITOR_REMOTE_URL)"});
        }
        RemoteEndpoint endpoint;
        endpoint.url = config.remote_url;
        endpoint.token = config.remote_token;
        endpoint.timeout_seconds = static_cast<int>(config.remote_timeout_seconds);
        owned_remote = std::make_unique<HttpRemoteClassifier>(endpoint);
        remote = owned_remote.get();
    }

    EnrichmentOptions options;
    options.backend = config.backend;
    options.backoff = config.backoff;
    options.concurrency = static_cast<int>(config.concurrency);
    options.seed = config.seed;
    Enricher enricher(options, config.backend == EnrichmentBackend::Remote ? remote
                                                                           : nullptr);
    const std::vector<EnrichedFinding> enriched = enricher.enrich_all(scan.findings);

    const std::vector<ThreatScore> scores = score_findings(enriched, config.constants);

    ReportMetadata meta;
    meta.repo = scan_config.repo;
    meta.tool_version = kToolVersion;
    meta.config_fingerprint = config_fingerprint(config);
    meta.generated_at = generated_at;
    meta.scoring_constants = config.constants;
    meta.scan_counters = scan.counters;
    meta.enrichment_counters = enricher.counters();
    return build_report(enriched, scores, meta);
}

int exit_code_for(const Report& report) {
    for (const auto& entry : report.entries) {
        if (entry.band == ThreatBand::Critical) return 1;
    }
    return 0;
}

}  // namespace pqcaudit
