#include "pqcaudit/report.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace pqcaudit {

std::string_view to_string(MigrationEffort effort) {
    switch (effort) {
        case MigrationEffort::Small: return "SMALL";
        case MigrationEffort::Medium: return "MEDIUM";
        case MigrationEffort::Large: return "LARGE";
    }
    return "UNKNOWN";
}

std::optional<MigrationEffort> migration_effort_from_string(std::string_view name) {
    if (name == "SMALL") return MigrationEffort::Small;
    if (name == "MEDIUM") return MigrationEffort::Medium;
    if (name == "LARGE") return MigrationEffort::Large;
    return std::nullopt;
}

MigrationEffort migration_effort_for(AlgorithmClass algorithm) {
    switch (algorithm) {
        case AlgorithmClass::Md5:
        case AlgorithmClass::Sha1:
            return MigrationEffort::Small;
        case AlgorithmClass::Aes128:
        case AlgorithmClass::TripleDes:
        case AlgorithmClass::Rc4:
            return MigrationEffort::Medium;
        case AlgorithmClass::Rsa:
        case AlgorithmClass::Ecdsa:
        case AlgorithmClass::Ecdh:
        case AlgorithmClass::Dsa:
        case AlgorithmClass::Dh:
        case AlgorithmClass::X25519:
        case AlgorithmClass::Ed25519:
        case AlgorithmClass::Pkcs1V15:
        case AlgorithmClass::HardcodedKey:
        case AlgorithmClass::Rsa1024:
            return MigrationEffort::Large;
    }
    throw std::invalid_argument("unknown AlgorithmClass");
}

std::string_view migration_window_for(ThreatBand band) {
    switch (band) {
        case ThreatBand::Critical: return "immediate";
        case ThreatBand::High: return "6 months";
        case ThreatBand::Medium: return "12 months";
        case ThreatBand::Low: return "monitor";
    }
    return "monitor";
}

Report build_report(const std::vector<EnrichedFinding>& findings,
                    const std::vector<ThreatScore>& scores,
                    const ReportMetadata& meta) {
    if (findings.size() != scores.size()) {
        throw std::invalid_argument(
            fmt::format("build_report: {} findings but {} scores", findings.size(),
                        scores.size()));
    }

    Report report;
    report.tool_version = meta.tool_version;
    report.config_fingerprint = meta.config_fingerprint;
    report.repo = meta.repo;
    report.generated_at = meta.generated_at;
    report.scoring_constants = meta.scoring_constants;
    report.scan_counters = meta.scan_counters;
    report.enrichment_counters = meta.enrichment_counters;

    report.entries.reserve(findings.size());
    std::vector<RepoFinding> aggregates;
    aggregates.reserve(findings.size());
    for (std::size_t i = 0; i < findings.size(); ++i) {
        const EnrichedFinding& enriched = findings[i];
        const RawFinding& raw = enriched.finding;
        const AlgorithmProfile& profile = profile_for(raw.algorithm);

        ReportEntry entry;
        entry.finding_id = raw.id;
        entry.algorithm = raw.algorithm;
        entry.file = raw.file;
        entry.line = raw.line;
        entry.context = enriched.context;
        entry.severity = enriched.severity;
        entry.confidence = enriched.confidence;
        entry.threat_score = scores[i].score;
        entry.band = scores[i].band;
        entry.replacement = std::string(profile.replacement);
        entry.migration_effort = migration_effort_for(raw.algorithm);
        entry.migration_window = std::string(migration_window_for(entry.band));
        entry.context_snippet = raw.context_snippet;
        report.entries.push_back(std::move(entry));

        aggregates.push_back(
            {enriched.context == ContextLabel::Production, scores[i].score});
    }

    std::sort(report.entries.begin(), report.entries.end(),
              [](const ReportEntry& a, const ReportEntry& b) {
                  if (a.threat_score != b.threat_score) {
                      return a.threat_score > b.threat_score;
                  }
                  return std::tie(a.file, a.line, a.algorithm) <
                         std::tie(b.file, b.line, b.algorithm);
              });

    report.repo_score = repo_score(aggregates);
    return report;
}

// --- JSON -------------------------------------------------------------

void to_json(nlohmann::json& j, const ScoringConstants& constants) {
    j = nlohmann::json{{"shor_weight_cap", constants.shor_weight_cap},
                       {"grover_weight_cap", constants.grover_weight_cap},
                       {"interaction_magnitude", constants.interaction_magnitude},
                       {"reference_qubits", constants.reference_qubits},
                       {"energy_scale", constants.energy_scale},
                       {"critical_threshold", constants.critical_threshold},
                       {"high_threshold", constants.high_threshold},
                       {"medium_threshold", constants.medium_threshold}};
}

void from_json(const nlohmann::json& j, ScoringConstants& constants) {
    j.at("shor_weight_cap").get_to(constants.shor_weight_cap);
    j.at("grover_weight_cap").get_to(constants.grover_weight_cap);
    j.at("interaction_magnitude").get_to(constants.interaction_magnitude);
    j.at("reference_qubits").get_to(constants.reference_qubits);
    j.at("energy_scale").get_to(constants.energy_scale);
    j.at("critical_threshold").get_to(constants.critical_threshold);
    j.at("high_threshold").get_to(constants.high_threshold);
    j.at("medium_threshold").get_to(constants.medium_threshold);
}

void to_json(nlohmann::json& j, const ScanCounters& counters) {
    j = nlohmann::json{{"files_seen", counters.files_seen},
                       {"files_scanned", counters.files_scanned},
                       {"files_excluded", counters.files_excluded},
                       {"files_skipped_binary", counters.files_skipped_binary},
                       {"files_skipped_large", counters.files_skipped_large},
                       {"files_unreadable", counters.files_unreadable},
                       {"files_budget_exceeded", counters.files_budget_exceeded}};
}

void from_json(const nlohmann::json& j, ScanCounters& counters) {
    j.at("files_seen").get_to(counters.files_seen);
    j.at("files_scanned").get_to(counters.files_scanned);
    j.at("files_excluded").get_to(counters.files_excluded);
    j.at("files_skipped_binary").get_to(counters.files_skipped_binary);
    j.at("files_skipped_large").get_to(counters.files_skipped_large);
    j.at("files_unreadable").get_to(counters.files_unreadable);
    j.at("files_budget_exceeded").get_to(counters.files_budget_exceeded);
}

void to_json(nlohmann::json& j, const EnrichmentCounters& counters) {
    j = nlohmann::json{{"remote_ok", counters.remote_ok},
                       {"heuristic_used", counters.heuristic_used},
                       {"regex_fallback", counters.regex_fallback},
                       {"confidence_clamped", counters.confidence_clamped},
                       {"malformed_responses", counters.malformed_responses},
                       {"retries", counters.retries},
                       {"exhaustions", counters.exhaustions}};
}

void from_json(const nlohmann::json& j, EnrichmentCounters& counters) {
    j.at("remote_ok").get_to(counters.remote_ok);
    j.at("heuristic_used").get_to(counters.heuristic_used);
    j.at("regex_fallback").get_to(counters.regex_fallback);
    j.at("confidence_clamped").get_to(counters.confidence_clamped);
    j.at("malformed_responses").get_to(counters.malformed_responses);
    j.at("retries").get_to(counters.retries);
    j.at("exhaustions").get_to(counters.exhaustions);
}

namespace {

template <typename Enum, typename Parser>
Enum parse_enum_field(const nlohmann::json& j, const char* field, Parser parser) {
    const auto text = j.at(field).get<std::string>();
    const auto value = parser(text);
    if (!value) {
        throw std::invalid_argument(
            fmt::format("report JSON: unknown {} '{}'", field, text));
    }
    return *value;
}

}  // namespace

void to_json(nlohmann::json& j, const ReportEntry& entry) {
    j = nlohmann::json{{"finding_id", entry.finding_id},
                       {"algorithm_class", to_string(entry.algorithm)},
                       {"file", entry.file},
                       {"line", entry.line},
                       {"context", to_string(entry.context)},
                       {"severity", to_string(entry.severity)},
                       {"confidence", entry.confidence},
                       {"threat_score", entry.threat_score},
                       {"band", to_string(entry.band)},
                       {"replacement", entry.replacement},
                       {"migration_effort", to_string(entry.migration_effort)},
                       {"migration_window", entry.migration_window},
                       {"context_snippet", entry.context_snippet}};
}

void from_json(const nlohmann::json& j, ReportEntry& entry) {
    j.at("finding_id").get_to(entry.finding_id);
    entry.algorithm =
        parse_enum_field<AlgorithmClass>(j, "algorithm_class", algorithm_class_from_string);
    j.at("file").get_to(entry.file);
    j.at("line").get_to(entry.line);
    entry.context = parse_enum_field<ContextLabel>(j, "context", context_label_from_string);
    entry.severity = parse_enum_field<Severity>(j, "severity", severity_from_string);
    j.at("confidence").get_to(entry.confidence);
    j.at("threat_score").get_to(entry.threat_score);
    entry.band = parse_enum_field<ThreatBand>(j, "band", threat_band_from_string);
    j.at("replacement").get_to(entry.replacement);
    entry.migration_effort =
        parse_enum_field<MigrationEffort>(j, "migration_effort", migration_effort_from_string);
    j.at("migration_window").get_to(entry.migration_window);
    j.at("context_snippet").get_to(entry.context_snippet);
}

void to_json(nlohmann::json& j, const Report& report) {
    j = nlohmann::json{{"report_version", report.report_version},
                       {"tool_version", report.tool_version},
                       {"config_fingerprint", report.config_fingerprint},
                       {"repo", report.repo},
                       {"generated_at", report.generated_at},
                       {"repo_score", report.repo_score},
                       {"scoring_constants", report.scoring_constants},
                       {"counters",
                        {{"scan", report.scan_counters},
                         {"enrichment", report.enrichment_counters}}},
                       {"entries", report.entries}};
}

void from_json(const nlohmann::json& j, Report& report) {
    j.at("report_version").get_to(report.report_version);
    j.at("tool_version").get_to(report.tool_version);
    j.at("config_fingerprint").get_to(report.config_fingerprint);
    j.at("repo").get_to(report.repo);
    j.at("generated_at").get_to(report.generated_at);
    j.at("repo_score").get_to(report.repo_score);
    j.at("scoring_constants").get_to(report.scoring_constants);
    j.at("counters").at("scan").get_to(report.scan_counters);
    j.at("counters").at("enrichment").get_to(report.enrichment_counters);
    j.at("entries").get_to(report.entries);
}

// --- Rendering ---------------------------------------------------------

std::string render_summary(const Report& report) {
    std::string out;
    out += fmt::format("Post-quantum audit: {}\n", report.repo);
    out += fmt::format("generated {} | tool {} | config {}\n", report.generated_at,
                       report.tool_version, report.config_fingerprint);
    out += fmt::format("repository threat score {:.2f} ({})\n", report.repo_score,
                       to_string(band_for(report.repo_score, report.scoring_constants)));

    std::size_t critical = 0, high = 0, medium = 0, low = 0;
    std::map<AlgorithmClass, std::size_t> by_class;
    for (const auto& entry : report.entries) {
        switch (entry.band) {
            case ThreatBand::Critical: ++critical; break;
            case ThreatBand::High: ++high; break;
            case ThreatBand::Medium: ++medium; break;
            case ThreatBand::Low: ++low; break;
        }
        ++by_class[entry.algorithm];
    }
    out += fmt::format("{} finding(s): {} CRITICAL, {} HIGH, {} MEDIUM, {} LOW\n",
                       report.entries.size(), critical, high, medium, low);

    if (report.entries.empty()) {
        out += "no quantum-vulnerable usage detected\n";
        return out;
    }

    out += "\nby algorithm:\n";
    std::vector<std::pair<AlgorithmClass, std::size_t>> tally(by_class.begin(),
                                                              by_class.end());
    std::sort(tally.begin(), tally.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [algorithm, count] : tally) {
        out += fmt::format("  {:<14} {}\n", to_string(algorithm), count);
    }

    out += "\ntop findings:\n";
    constexpr std::size_t kTopEntries = 10;
    const std::size_t shown = std::min(report.entries.size(), kTopEntries);
    for (std::size_t i = 0; i < shown; ++i) {
        const ReportEntry& entry = report.entries[i];
        out += fmt::format("  {:>5.2f} {:<8} {}:{} {} ({}) -> {}\n", entry.threat_score,
                           to_string(entry.band), entry.file, entry.line,
                           to_string(entry.algorithm), to_string(entry.context),
                           entry.replacement);
    }
    if (report.entries.size() > shown) {
        out += fmt::format("  +{} more\n", report.entries.size() - shown);
    }
    return out;
}

std::vector<Issue> export_issues(const Report& report, ThreatBand min_band) {
    std::vector<Issue> issues;
    for (const auto& entry : report.entries) {
        if (static_cast<int>(entry.band) > static_cast<int>(min_band)) continue;
        Issue issue;
        issue.title = fmt::format("[PQC] {} in {}:{}", to_string(entry.algorithm),
                                  entry.file, entry.line);
        issue.body = fmt::format(
            "Algorithm class: {}\n"
            "Location: {}:{}\n"
            "Context: {} (severity {}, confidence {:.2f})\n"
            "Threat score: {:.2f} ({})\n"
            "Suggested replacement: {}\n"
            "Migration effort: {} | window: {}\n"
            "\n"
            "Snippet:\n"
            "{}\n",
            to_string(entry.algorithm), entry.file, entry.line, to_string(entry.context),
            to_string(entry.severity), entry.confidence, entry.threat_score,
            to_string(entry.band), entry.replacement, to_string(entry.migration_effort),
            entry.migration_window, entry.context_snippet);
        issues.push_back(std::move(issue));
    }
    return issues;
}

}  // namespace pqcaudit
