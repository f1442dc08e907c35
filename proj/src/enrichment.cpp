#include "pqcaudit/enrichment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <regex>
#include <thread>

#include "pqcaudit/util.hpp"

namespace pqcaudit {

namespace {

constexpr double kMinTrustedConfidence = 0.7;

const std::regex& aes256_token() {
    static const std::regex re(R"(aes[\s_-]?256)",
                               std::regex::ECMAScript | std::regex::icase);
    return re;
}

const std::regex& modern_digest_token() {
    static const std::regex re(R"(sha[-_ ]?(?:256|384|512|3(?![0-9])))",
                               std::regex::ECMAScript | std::regex::icase);
    return re;
}

const std::regex& pqc_token() {
    static const std::regex re(
        R"((^|[^a-z0-9])(?:ml[-_ ]?kem|ml[-_ ]?dsa|slh[-_ ]?dsa|kyber|dilithium|sphincs))",
        std::regex::ECMAScript | std::regex::icase);
    return re;
}

// Token that marks the snippet as already using the safe variant of the
// matched class; absent for key exposure (there is no "safe" hardcoded key).
const std::regex* safe_variant_pattern(AlgorithmClass algorithm) {
    const AlgorithmProfile& profile = profile_for(algorithm);
    switch (profile.path) {
        case AttackPath::Shor:
            return &pqc_token();
        case AttackPath::Grover:
            if (algorithm == AlgorithmClass::Md5 || algorithm == AlgorithmClass::Sha1) {
                return &modern_digest_token();
            }
            return &aes256_token();
        case AttackPath::KeyExposure:
            return nullptr;
    }
    return nullptr;
}

bool has_test_path_segment(std::string_view file) {
    static const char* kTestSegments[] = {"test", "tests", "spec", "fixtures", "examples"};
    std::size_t start = 0;
    while (start <= file.size()) {
        std::size_t slash = file.find('/', start);
        const std::string_view segment = (slash == std::string_view::npos)
                                             ? file.substr(start)
                                             : file.substr(start, slash - start);
        const std::string lowered = lower_copy(segment);
        for (const char* candidate : kTestSegments) {
            if (lowered == candidate) return true;
        }
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return false;
}

double uniform_jitter(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return dist(rng);
}

void real_sleep(double seconds) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

}  // namespace

std::string_view to_string(ContextLabel label) {
    switch (label) {
        case ContextLabel::Production: return "production";
        case ContextLabel::Test: return "test";
        case ContextLabel::Safe: return "safe";
    }
    return "unknown";
}

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::Critical: return "critical";
        case Severity::High: return "high";
        case Severity::Medium: return "medium";
        case Severity::Low: return "low";
    }
    return "unknown";
}

std::string_view to_string(EnrichmentSource source) {
    switch (source) {
        case EnrichmentSource::Remote: return "REMOTE";
        case EnrichmentSource::Heuristic: return "HEURISTIC";
        case EnrichmentSource::RegexFallback: return "REGEX_FALLBACK";
    }
    return "UNKNOWN";
}

std::optional<ContextLabel> context_label_from_string(std::string_view name) {
    if (name == "production") return ContextLabel::Production;
    if (name == "test") return ContextLabel::Test;
    if (name == "safe") return ContextLabel::Safe;
    return std::nullopt;
}

std::optional<Severity> severity_from_string(std::string_view name) {
    if (name == "critical") return Severity::Critical;
    if (name == "high") return Severity::High;
    if (name == "medium") return Severity::Medium;
    if (name == "low") return Severity::Low;
    return std::nullopt;
}

std::string_view to_string(EnrichmentBackend backend) {
    switch (backend) {
        case EnrichmentBackend::Off: return "off";
        case EnrichmentBackend::Heuristic: return "heuristic";
        case EnrichmentBackend::Remote: return "remote";
    }
    return "unknown";
}

std::optional<EnrichmentBackend> enrichment_backend_from_string(std::string_view name) {
    if (name == "off") return EnrichmentBackend::Off;
    if (name == "heuristic") return EnrichmentBackend::Heuristic;
    if (name == "remote") return EnrichmentBackend::Remote;
    return std::nullopt;
}

Severity production_severity(AlgorithmClass algorithm) {
    const AlgorithmProfile& profile = profile_for(algorithm);
    switch (profile.path) {
        case AttackPath::Shor:
            return profile.break_class == BreakClass::Full ? Severity::Critical
                                                           : Severity::High;
        case AttackPath::Grover:
            return (profile.break_class == BreakClass::AlreadyBroken ||
                    profile.break_class == BreakClass::CriticallyWeakened)
                       ? Severity::High
                       : Severity::Medium;
        case AttackPath::KeyExposure:
            return Severity::High;
    }
    return Severity::High;
}

Classification heuristic_classify(const RawFinding& finding) {
    if (has_test_path_segment(finding.file)) {
        return {ContextLabel::Test, Severity::Low, 0.9};
    }
    if (const std::regex* safe = safe_variant_pattern(finding.algorithm)) {
        if (std::regex_search(finding.context_snippet, *safe)) {
            return {ContextLabel::Safe, Severity::Low, 0.7};
        }
    }
    return {ContextLabel::Production, production_severity(finding.algorithm), 0.8};
}

double next_backoff(int attempt, const BackoffPolicy& policy, double jitter_draw) {
    if (attempt < 1) {
        throw std::invalid_argument("next_backoff: attempt numbering starts at 1");
    }
    if (attempt > policy.max_attempts) {
        throw BackoffExhausted(policy.max_attempts);
    }
    if (jitter_draw < -1.0 || jitter_draw > 1.0) {
        throw std::invalid_argument("next_backoff: jitter_draw must lie in [-1, 1]");
    }
    const double nominal =
        std::min(policy.base_seconds * std::exp2(static_cast<double>(attempt - 1)),
                 policy.max_seconds);
    return nominal * (1.0 + policy.jitter_fraction * jitter_draw);
}

Enricher::Enricher(EnrichmentOptions options, RemoteClassifier* remote, Sleeper sleeper)
    : options_(options),
      remote_(remote),
      sleeper_(sleeper ? std::move(sleeper) : Sleeper(real_sleep)) {
    if (options_.backend == EnrichmentBackend::Remote && remote_ == nullptr) {
        throw std::invalid_argument("Enricher: remote backend needs a RemoteClassifier");
    }
    if (options_.concurrency < 1) {
        throw std::invalid_argument("Enricher: concurrency must be >= 1");
    }
}

EnrichedFinding Enricher::fallback(const RawFinding& finding) const {
    EnrichedFinding out;
    out.finding = finding;
    out.context = ContextLabel::Production;
    out.severity = production_severity(finding.algorithm);
    out.confidence = 0.5;
    out.source = EnrichmentSource::RegexFallback;
    return out;
}

std::vector<EnrichedFinding> Enricher::enrich_all(const std::vector<RawFinding>& findings) {
    std::vector<EnrichedFinding> out(findings.size());

    switch (options_.backend) {
        case EnrichmentBackend::Off: {
            for (std::size_t i = 0; i < findings.size(); ++i) {
                out[i] = fallback(findings[i]);
                ++counters_.regex_fallback;
            }
            return out;
        }
        case EnrichmentBackend::Heuristic: {
            for (std::size_t i = 0; i < findings.size(); ++i) {
                const Classification c = heuristic_classify(findings[i]);
                out[i] = {findings[i], c.context, c.severity, c.confidence,
                          EnrichmentSource::Heuristic};
                ++counters_.heuristic_used;
            }
            return out;
        }
        case EnrichmentBackend::Remote:
            break;
    }

    // Remote: the retry/fallback unit is a file, so group indices by file
    // (first-appearance order) and work through groups, possibly in parallel.
    std::vector<std::vector<std::size_t>> groups;
    {
        std::map<std::string_view, std::size_t> group_of;
        for (std::size_t i = 0; i < findings.size(); ++i) {
            const auto [it, inserted] =
                group_of.try_emplace(findings[i].file, groups.size());
            if (inserted) groups.emplace_back();
            groups[it->second].push_back(i);
        }
    }

    std::vector<EnrichmentCounters> local_counters(groups.size());
    const int workers = std::max(
        1, std::min<int>(options_.concurrency, static_cast<int>(groups.size())));
    if (workers <= 1) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            enrich_file_remote(findings, groups[g], out, local_counters[g]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            while (true) {
                const std::size_t g = next.fetch_add(1);
                if (g >= groups.size()) break;
                enrich_file_remote(findings, groups[g], out, local_counters[g]);
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) threads.emplace_back(work);
        for (std::thread& t : threads) t.join();
    }

    for (const EnrichmentCounters& local : local_counters) {
        counters_.remote_ok += local.remote_ok;
        counters_.heuristic_used += local.heuristic_used;
        counters_.regex_fallback += local.regex_fallback;
        counters_.confidence_clamped += local.confidence_clamped;
        counters_.malformed_responses += local.malformed_responses;
        counters_.retries += local.retries;
        counters_.exhaustions += local.exhaustions;
    }
    return out;
}

void Enricher::enrich_file_remote(const std::vector<RawFinding>& findings,
                                  const std::vector<std::size_t>& indices,
                                  std::vector<EnrichedFinding>& out,
                                  EnrichmentCounters& local) {
    if (indices.empty()) return;
    std::mt19937_64 rng(fnv1a64(findings[indices.front()].file) ^
                        (options_.seed * 0x9e3779b97f4a7c15ull));
    bool file_degraded = false;

    for (const std::size_t i : indices) {
        const RawFinding& finding = findings[i];
        if (file_degraded) {
            out[i] = fallback(finding);
            ++local.regex_fallback;
            continue;
        }

        int attempt = 1;
        while (true) {
            const RemoteResult result = remote_->classify(finding);
            if (result.status == RemoteStatus::Ok) {
                double confidence = result.classification.confidence;
                if (confidence < kMinTrustedConfidence) {
                    confidence = kMinTrustedConfidence;
                    ++local.confidence_clamped;
                }
                out[i] = {finding, result.classification.context,
                          result.classification.severity, confidence,
                          EnrichmentSource::Remote};
                ++local.remote_ok;
                break;
            }
            if (result.status == RemoteStatus::Malformed) {
                ++local.malformed_responses;
                const Classification c = heuristic_classify(finding);
                out[i] = {finding, c.context, c.severity, c.confidence,
                          EnrichmentSource::Heuristic};
                ++local.heuristic_used;
                break;
            }
            // Rate limited or network trouble: retry until attempts run out,
            // then degrade this file to regex-only results.
            if (attempt >= options_.backoff.max_attempts) {
                ++local.exhaustions;
                file_degraded = true;
                out[i] = fallback(finding);
                ++local.regex_fallback;
                break;
            }
            ++local.retries;
            sleeper_(next_backoff(attempt, options_.backoff, uniform_jitter(rng)));
            ++attempt;
        }
    }
}

}  // namespace pqcaudit
