#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqcaudit {

// Manual review labels. Findings in test paths are tracked separately from
// real mistakes: they are correct detections of irrelevant code.
enum class EvalLabel { TruePositive, FpTest, FpContext, FpSafe };

std::string_view to_string(EvalLabel label);
std::optional<EvalLabel> eval_label_from_string(std::string_view name);

struct LabelledFinding {
    std::string finding_id;
    std::string repo;             // optional; empty when the CSV lacks the column
    std::string algorithm_class;  // optional; required for per-algorithm metrics
    EvalLabel label = EvalLabel::TruePositive;

    bool operator==(const LabelledFinding&) const = default;
};

// Exact fraction; num/den are gcd-normalized, den == 0 means UNDEFINED.
// Metrics are computed on these and only rendered to double at the edges.
struct Ratio {
    long long num = 0;
    long long den = 0;

    static Ratio of(long long numerator, long long denominator);
    static Ratio undefined() { return {}; }

    bool defined() const { return den != 0; }
    double value() const;  // NaN when undefined

    bool operator==(const Ratio&) const = default;
};

struct MetricsReport {
    long long tp = 0;
    long long fp_test = 0;
    long long fp_context = 0;
    long long fp_safe = 0;
    long long fn = 0;  // structurally zero: the corpus is what the scanner emitted
    Ratio precision;
    Ratio recall;
    Ratio f1;

    bool operator==(const MetricsReport&) const = default;
};

// precision = tp / (tp + fp_context + fp_safe)   (FP-Test excluded both sides)
// recall    = tp / (tp + fn)
// f1        = 2PR / (P + R)
// Each is UNDEFINED when its denominator is zero. Throws std::invalid_argument
// on an empty label set or a duplicated finding_id.
MetricsReport compute_metrics(const std::vector<LabelledFinding>& labels);

// Metrics over the subset without FP_TEST rows. Dropping FP_TEST changes
// neither precision nor F1 — they never entered those formulas.
MetricsReport cleaned_metrics(const std::vector<LabelledFinding>& labels);

struct AlgorithmPrecision {
    std::string algorithm_class;
    long long tp = 0;
    long long fp_non_test = 0;  // fp_context + fp_safe
    Ratio precision;

    bool operator==(const AlgorithmPrecision&) const = default;
};

// Per-class precision, sorted by precision descending (exact comparison),
// UNDEFINED rows last, name ascending between ties. Requires the
// algorithm_class column; throws std::invalid_argument when a row lacks it.
std::vector<AlgorithmPrecision> per_algorithm_precision(
    const std::vector<LabelledFinding>& labels);

struct SampleUnit {
    std::string finding_id;
    std::string repo;
    std::string algorithm_class;
};

struct StratumQuota {
    std::string repo;
    std::string algorithm_class;
    std::size_t size = 0;
    std::size_t quota = 0;

    bool operator==(const StratumQuota&) const = default;
};

struct SampleResult {
    std::vector<std::string> finding_ids;  // corpus order
    std::vector<StratumQuota> quotas;      // (repo, class) order
};

// Proportional stratified sample over (repo, algorithm_class) strata using
// largest-remainder apportionment, so the total equals round(rate * N).
// Remainder ties break by stratum name order; in-stratum selection is uniform
// under a generator derived from (seed, stratum), and quotas are
// seed-independent. rate must lie in (0, 1]; findings must be non-empty.
SampleResult stratified_sample(const std::vector<SampleUnit>& findings, double rate,
                               std::uint64_t seed);

// Labels CSV: header + rows. Required columns finding_id and label; optional
// repo and algorithm_class, any column order. Unknown columns, unknown label
// tokens and short rows raise std::runtime_error with the line number.
std::vector<LabelledFinding> parse_labels_csv(std::istream& in);

}  // namespace pqcaudit
