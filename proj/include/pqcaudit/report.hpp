#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pqcaudit/enrichment.hpp"
#include "pqcaudit/scanner.hpp"
#include "pqcaudit/vqe.hpp"

namespace pqcaudit {

// Rough engineering cost of swapping the primitive: digest swaps are local,
// symmetric upgrades touch key sizes and modes, and everything asymmetric
// (plus key-management rework) changes protocols and data formats.
enum class MigrationEffort { Small, Medium, Large };

std::string_view to_string(MigrationEffort effort);
std::optional<MigrationEffort> migration_effort_from_string(std::string_view name);

MigrationEffort migration_effort_for(AlgorithmClass algorithm);

// Remediation deadline attached to a finding's threat band.
std::string_view migration_window_for(ThreatBand band);

struct ReportEntry {
    std::string finding_id;
    AlgorithmClass algorithm = AlgorithmClass::Rsa;
    std::string file;
    int line = 0;
    ContextLabel context = ContextLabel::Production;
    Severity severity = Severity::Low;
    double confidence = 0.0;
    double threat_score = 0.0;
    ThreatBand band = ThreatBand::Low;
    std::string replacement;
    MigrationEffort migration_effort = MigrationEffort::Small;
    std::string migration_window;
    std::string context_snippet;

    bool operator==(const ReportEntry&) const = default;
};

struct Report {
    int report_version = 1;
    std::string tool_version;
    std::string config_fingerprint;
    std::string repo;
    std::string generated_at;  // injected by the caller, never read from a clock here
    double repo_score = 0.0;
    ScoringConstants scoring_constants;
    ScanCounters scan_counters;
    EnrichmentCounters enrichment_counters;
    std::vector<ReportEntry> entries;

    bool operator==(const Report&) const = default;
};

// Everything build_report needs besides the findings themselves.
struct ReportMetadata {
    std::string repo;
    std::string tool_version;
    std::string config_fingerprint;
    std::string generated_at;
    ScoringConstants scoring_constants;
    ScanCounters scan_counters;
    EnrichmentCounters enrichment_counters;
};

// Joins enriched findings with their scores (parallel arrays, same order) into
// a report: entries sorted by threat score descending, then file, line, class;
// repo_score aggregated from the production flags. Throws std::invalid_argument
// when the two vectors disagree in length.
Report build_report(const std::vector<EnrichedFinding>& findings,
                    const std::vector<ThreatScore>& scores,
                    const ReportMetadata& meta);

// nlohmann ADL hooks; serialize(report) -> parse -> equals the original.
void to_json(nlohmann::json& j, const ScoringConstants& constants);
void from_json(const nlohmann::json& j, ScoringConstants& constants);
void to_json(nlohmann::json& j, const ScanCounters& counters);
void from_json(const nlohmann::json& j, ScanCounters& counters);
void to_json(nlohmann::json& j, const EnrichmentCounters& counters);
void from_json(const nlohmann::json& j, EnrichmentCounters& counters);
void to_json(nlohmann::json& j, const ReportEntry& entry);
void from_json(const nlohmann::json& j, ReportEntry& entry);
void to_json(nlohmann::json& j, const Report& report);
void from_json(const nlohmann::json& j, Report& report);

// Human-readable digest: header, band tally, per-class counts, and the ten
// highest-scoring entries with a "+N more" trailer.
std::string render_summary(const Report& report);

struct Issue {
    std::string title;
    std::string body;

    bool operator==(const Issue&) const = default;
};

// One ticket per entry at or above min_band, in report order.
std::vector<Issue> export_issues(const Report& report, ThreatBand min_band);

}  // namespace pqcaudit
