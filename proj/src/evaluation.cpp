#include "pqcaudit/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <fmt/core.h>

#include "pqcaudit/util.hpp"

namespace pqcaudit {

std::string_view to_string(EvalLabel label) {
    switch (label) {
        case EvalLabel::TruePositive: return "TP";
        case EvalLabel::FpTest: return "FP_TEST";
        case EvalLabel::FpContext: return "FP_CONTEXT";
        case EvalLabel::FpSafe: return "FP_SAFE";
    }
    throw std::invalid_argument("unknown EvalLabel");
}

std::optional<EvalLabel> eval_label_from_string(std::string_view name) {
    if (name == "TP") return EvalLabel::TruePositive;
    if (name == "FP_TEST") return EvalLabel::FpTest;
    if (name == "FP_CONTEXT") return EvalLabel::FpContext;
    if (name == "FP_SAFE") return EvalLabel::FpSafe;
    return std::nullopt;
}

Ratio Ratio::of(long long numerator, long long denominator) {
    if (denominator == 0) return undefined();
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const long long g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
    if (g > 1) {
        numerator /= g;
        denominator /= g;
    }
    return {numerator, denominator};
}

double Ratio::value() const {
    if (!defined()) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

void check_labels(const std::vector<LabelledFinding>& labels) {
    if (labels.empty()) {
        throw std::invalid_argument("compute_metrics: empty label set");
    }
    std::set<std::string_view> seen;
    for (const auto& row : labels) {
        if (!seen.insert(row.finding_id).second) {
            throw std::invalid_argument(
                fmt::format("compute_metrics: duplicate finding_id '{}'", row.finding_id));
        }
    }
}

MetricsReport metrics_from_counts(long long tp, long long fp_test, long long fp_context,
                                  long long fp_safe) {
    MetricsReport report;
    report.tp = tp;
    report.fp_test = fp_test;
    report.fp_context = fp_context;
    report.fp_safe = fp_safe;
    report.fn = 0;

    report.precision = Ratio::of(tp, tp + fp_context + fp_safe);
    report.recall = Ratio::of(tp, tp + report.fn);

    // F1 = 2PR/(P+R) with P = a/b, R = c/d reduces to 2ac / (ad + bc); both
    // factors stay well inside long long for review-scale counts.
    if (report.precision.defined() && report.recall.defined()) {
        const long long a = report.precision.num, b = report.precision.den;
        const long long c = report.recall.num, d = report.recall.den;
        report.f1 = Ratio::of(2 * a * c, a * d + b * c);
    } else {
        report.f1 = Ratio::undefined();
    }
    return report;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<LabelledFinding>& labels) {
    check_labels(labels);
    long long tp = 0, fp_test = 0, fp_context = 0, fp_safe = 0;
    for (const auto& row : labels) {
        switch (row.label) {
            case EvalLabel::TruePositive: ++tp; break;
            case EvalLabel::FpTest: ++fp_test; break;
            case EvalLabel::FpContext: ++fp_context; break;
            case EvalLabel::FpSafe: ++fp_safe; break;
        }
    }
    return metrics_from_counts(tp, fp_test, fp_context, fp_safe);
}

MetricsReport cleaned_metrics(const std::vector<LabelledFinding>& labels) {
    check_labels(labels);
    std::vector<LabelledFinding> kept;
    kept.reserve(labels.size());
    for (const auto& row : labels) {
        if (row.label != EvalLabel::FpTest) kept.push_back(row);
    }
    if (kept.empty()) {
        // All rows were test noise: nothing left to measure.
        return metrics_from_counts(0, 0, 0, 0);
    }
    return compute_metrics(kept);
}

std::vector<AlgorithmPrecision> per_algorithm_precision(
    const std::vector<LabelledFinding>& labels) {
    check_labels(labels);
    std::map<std::string, AlgorithmPrecision> rows;
    for (const auto& row : labels) {
        if (row.algorithm_class.empty()) {
            throw std::invalid_argument(fmt::format(
                "per_algorithm_precision: finding '{}' has no algorithm_class",
                row.finding_id));
        }
        auto& acc = rows[row.algorithm_class];
        acc.algorithm_class = row.algorithm_class;
        switch (row.label) {
            case EvalLabel::TruePositive: ++acc.tp; break;
            case EvalLabel::FpContext:
            case EvalLabel::FpSafe: ++acc.fp_non_test; break;
            case EvalLabel::FpTest: break;  // excluded, as in the aggregates
        }
    }

    std::vector<AlgorithmPrecision> out;
    out.reserve(rows.size());
    for (auto& [name, acc] : rows) {
        acc.precision = Ratio::of(acc.tp, acc.tp + acc.fp_non_test);
        out.push_back(std::move(acc));
    }
    std::sort(out.begin(), out.end(),
              [](const AlgorithmPrecision& a, const AlgorithmPrecision& b) {
                  const bool da = a.precision.defined(), db = b.precision.defined();
                  if (da != db) return da;  // defined rows first
                  if (da && db) {
                      // a/b > c/d  <=>  ad > cb (denominators positive)
                      const long long lhs = a.precision.num * b.precision.den;
                      const long long rhs = b.precision.num * a.precision.den;
                      if (lhs != rhs) return lhs > rhs;
                  }
                  return a.algorithm_class < b.algorithm_class;
              });
    return out;
}

SampleResult stratified_sample(const std::vector<SampleUnit>& findings, double rate,
                               std::uint64_t seed) {
    if (findings.empty()) {
        throw std::invalid_argument("stratified_sample: empty corpus");
    }
    if (!(rate > 0.0) || rate > 1.0) {
        throw std::invalid_argument(
            fmt::format("stratified_sample: rate {} outside (0, 1]", rate));
    }

    using StratumKey = std::pair<std::string, std::string>;  // (repo, class)
    std::map<StratumKey, std::vector<std::size_t>> strata;   // corpus indices
    for (std::size_t i = 0; i < findings.size(); ++i) {
        strata[{findings[i].repo, findings[i].algorithm_class}].push_back(i);
    }

    const auto total_target = static_cast<std::size_t>(
        std::llround(rate * static_cast<double>(findings.size())));

    // Largest-remainder apportionment: floor each stratum's exact share, then
    // hand the leftover +1s to the largest fractional remainders (ties by
    // stratum key, which is already the map order).
    struct Share {
        const StratumKey* key;
        const std::vector<std::size_t>* members;
        std::size_t quota;
        double remainder;
    };
    std::vector<Share> shares;
    shares.reserve(strata.size());
    std::size_t assigned = 0;
    for (const auto& [key, members] : strata) {
        const double exact = rate * static_cast<double>(members.size());
        auto q = static_cast<std::size_t>(std::floor(exact));
        if (q > members.size()) q = members.size();
        shares.push_back({&key, &members, q, exact - std::floor(exact)});
        assigned += q;
    }
    if (assigned > total_target) {
        throw std::logic_error("stratified_sample: floor quotas exceed target");
    }
    std::size_t leftover = total_target - assigned;

    std::vector<std::size_t> order(shares.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return shares[a].remainder > shares[b].remainder;
    });
    for (std::size_t idx : order) {
        if (leftover == 0) break;
        auto& share = shares[idx];
        if (share.quota < share.members->size()) {
            ++share.quota;
            --leftover;
        }
    }
    if (leftover != 0) {
        throw std::logic_error("stratified_sample: could not place all quota units");
    }

    SampleResult result;
    std::vector<char> chosen(findings.size(), 0);
    for (const auto& share : shares) {
        const auto& [repo, algo] = *share.key;
        result.quotas.push_back({repo, algo, share.members->size(), share.quota});

        // Per-stratum generator: reseeding depends only on (seed, stratum), so
        // adding an unrelated stratum cannot shift this one's draw.
        const std::uint64_t stratum_hash = fnv1a64(repo + "\x1f" + algo);
        std::mt19937_64 rng(stratum_hash ^ (seed * 0x9e3779b97f4a7c15ull));

        std::vector<std::size_t> pool = *share.members;
        for (std::size_t k = 0; k < share.quota; ++k) {
            std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
            std::swap(pool[k], pool[pick(rng)]);
            chosen[pool[k]] = 1;
        }
    }
    for (std::size_t i = 0; i < findings.size(); ++i) {
        if (chosen[i]) result.finding_ids.push_back(findings[i].finding_id);
    }
    return result;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<LabelledFinding> parse_labels_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    // Header.
    if (!std::getline(in, line)) {
        throw std::runtime_error("labels CSV: empty input");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    int col_id = -1, col_label = -1, col_repo = -1, col_algo = -1;
    const auto header = split_csv_row(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim_copy(header[i]);
        const int idx = static_cast<int>(i);
        if (name == "finding_id") col_id = idx;
        else if (name == "label") col_label = idx;
        else if (name == "repo") col_repo = idx;
        else if (name == "algorithm_class") col_algo = idx;
        else {
            throw std::runtime_error(
                fmt::format("labels CSV line 1: unknown column '{}'", name));
        }
    }
    if (col_id < 0 || col_label < 0) {
        throw std::runtime_error(
            "labels CSV: header must include finding_id and label");
    }

    std::vector<LabelledFinding> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim_copy(line).empty()) continue;

        const auto fields = split_csv_row(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error(
                fmt::format("labels CSV line {}: expected {} fields, got {}", line_no,
                            header.size(), fields.size()));
        }

        LabelledFinding row;
        row.finding_id = trim_copy(fields[static_cast<std::size_t>(col_id)]);
        if (row.finding_id.empty()) {
            throw std::runtime_error(
                fmt::format("labels CSV line {}: empty finding_id", line_no));
        }
        const std::string label_text =
            trim_copy(fields[static_cast<std::size_t>(col_label)]);
        const auto label = eval_label_from_string(label_text);
        if (!label) {
            throw std::runtime_error(
                fmt::format("labels CSV line {}: unknown label '{}'", line_no,
                            label_text));
        }
        row.label = *label;
        if (col_repo >= 0) {
            row.repo = trim_copy(fields[static_cast<std::size_t>(col_repo)]);
        }
        if (col_algo >= 0) {
            row.algorithm_class = trim_copy(fields[static_cast<std::size_t>(col_algo)]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace pqcaudit
