#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqcaudit/scanner.hpp"
#include "pqcaudit/threat_knowledge.hpp"

namespace pqcaudit {

enum class ContextLabel { Production, Test, Safe };
enum class Severity { Critical, High, Medium, Low };  // descending order
enum class EnrichmentSource { Remote, Heuristic, RegexFallback };

std::string_view to_string(ContextLabel label);
std::string_view to_string(Severity severity);
std::string_view to_string(EnrichmentSource source);
std::optional<ContextLabel> context_label_from_string(std::string_view name);
std::optional<Severity> severity_from_string(std::string_view name);

struct Classification {
    ContextLabel context = ContextLabel::Production;
    Severity severity = Severity::Low;
    double confidence = 0.0;

    bool operator==(const Classification&) const = default;
};

struct EnrichedFinding {
    RawFinding finding;
    ContextLabel context = ContextLabel::Production;
    Severity severity = Severity::Low;
    double confidence = 0.5;
    EnrichmentSource source = EnrichmentSource::RegexFallback;

    bool operator==(const EnrichedFinding&) const = default;
};

// Severity a finding of this class carries in production context; also the
// severity used for regex-only fallback results.
Severity production_severity(AlgorithmClass algorithm);

// Path- and snippet-based classification:
//  - a path segment equal to test/tests/spec/fixtures/examples => TEST (0.9)
//  - a safe-variant token for the class in the snippet          => SAFE (0.7)
//  - otherwise production (0.8), severity per production_severity.
Classification heuristic_classify(const RawFinding& finding);

struct BackoffPolicy {
    double base_seconds = 2.0;
    double max_seconds = 64.0;
    double jitter_fraction = 0.10;  // must sit in [0, 1)
    int max_attempts = 8;

    bool operator==(const BackoffPolicy&) const = default;
};

// Delay before retry `attempt` (1-based):
//   min(base * 2^(attempt-1), max) * (1 + jitter_fraction * jitter_draw)
// jitter_draw comes from the caller in [-1, 1] so the function stays pure.
// Throws std::invalid_argument for attempt < 1 or jitter_draw outside [-1, 1]
// and BackoffExhausted once attempt exceeds policy.max_attempts.
double next_backoff(int attempt, const BackoffPolicy& policy, double jitter_draw);

class BackoffExhausted : public std::runtime_error {
public:
    explicit BackoffExhausted(int attempts)
        : std::runtime_error("backoff exhausted after " + std::to_string(attempts) +
                             " attempts") {}
};

// Remote classifier seam. The wire contract lives in remote_client.hpp; fakes
// implement this interface in tests.
enum class RemoteStatus { Ok, RateLimited, Malformed, NetworkError };

struct RemoteResult {
    RemoteStatus status = RemoteStatus::NetworkError;
    Classification classification;
    std::string detail;
};

class RemoteClassifier {
public:
    virtual ~RemoteClassifier() = default;
    virtual RemoteResult classify(const RawFinding& finding) = 0;
};

enum class EnrichmentBackend { Off, Heuristic, Remote };

std::string_view to_string(EnrichmentBackend backend);
std::optional<EnrichmentBackend> enrichment_backend_from_string(std::string_view name);

struct EnrichmentOptions {
    EnrichmentBackend backend = EnrichmentBackend::Heuristic;
    BackoffPolicy backoff;
    int concurrency = 4;      // remote backend: parallel file groups
    std::uint64_t seed = 0;   // drives jitter draws deterministically
};

struct EnrichmentCounters {
    std::int64_t remote_ok = 0;
    std::int64_t heuristic_used = 0;
    std::int64_t regex_fallback = 0;
    std::int64_t confidence_clamped = 0;
    std::int64_t malformed_responses = 0;
    std::int64_t retries = 0;
    std::int64_t exhaustions = 0;

    bool operator==(const EnrichmentCounters&) const = default;
};

// Attaches context/severity/confidence to raw findings. Output order always
// equals input order.
//
// Backends:
//  OFF       every finding becomes REGEX_FALLBACK (production context,
//            production severity, confidence pinned at 0.5).
//  HEURISTIC pure per-finding classification.
//  REMOTE    per-finding calls with retry/backoff on rate limits and network
//            errors; exhausting max_attempts flips the rest of that file to
//            REGEX_FALLBACK while other files keep using the remote. A
//            malformed response downgrades just that finding to the heuristic.
class Enricher {
public:
    using Sleeper = std::function<void(double seconds)>;

    explicit Enricher(EnrichmentOptions options, RemoteClassifier* remote = nullptr,
                      Sleeper sleeper = {});

    std::vector<EnrichedFinding> enrich_all(const std::vector<RawFinding>& findings);

    const EnrichmentCounters& counters() const { return counters_; }

private:
    EnrichedFinding fallback(const RawFinding& finding) const;
    void enrich_file_remote(const std::vector<RawFinding>& findings,
                            const std::vector<std::size_t>& indices,
                            std::vector<EnrichedFinding>& out,
                            EnrichmentCounters& local);

    EnrichmentOptions options_;
    RemoteClassifier* remote_;
    Sleeper sleeper_;
    EnrichmentCounters counters_;
};

}  // namespace pqcaudit
