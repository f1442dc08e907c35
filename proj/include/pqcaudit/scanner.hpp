#pragma once

#include <cstdint>
#include <filesystem>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pqcaudit/threat_knowledge.hpp"

namespace pqcaudit {

// One detector: an algorithm class plus its ordered, case-insensitive
// regexes. An empty extension set means "applies to every eligible file".
struct PatternClass {
    AlgorithmClass algorithm{};
    std::vector<std::string> pattern_texts;
    std::vector<std::regex> patterns;
    std::set<std::string> applicable_extensions;
};

inline constexpr std::size_t kDefaultMaxFileBytes = 2 * 1024 * 1024;
inline constexpr int kDefaultContextWindow = 5;
// regex_search calls allowed per file before the scan of that file is cut off.
inline constexpr std::uint64_t kMatchBudgetPerFile = 1'000'000;

const std::set<std::string>& default_eligible_extensions();

struct ScanConfig {
    std::filesystem::path root;
    std::string repo;  // recorded on every finding; defaults to root basename
    std::vector<std::string> exclude_globs;
    std::set<std::string> eligible_extensions = default_eligible_extensions();
    int context_window = kDefaultContextWindow;
    std::size_t max_file_bytes = kDefaultMaxFileBytes;
    int threads = 1;  // scan worker count; results are worker-count independent
};

struct RawFinding {
    std::string id;       // stable hash of (file, line, class)
    std::string repo;
    std::string file;     // repo-relative, '/'-separated
    int line = 0;         // 1-based
    AlgorithmClass algorithm{};
    std::string matched_text;
    std::string context_snippet;
    double confidence = 0.5;  // regex matches never claim more

    bool operator==(const RawFinding&) const = default;
};

struct ScanCounters {
    std::int64_t files_seen = 0;
    std::int64_t files_scanned = 0;
    std::int64_t files_excluded = 0;
    std::int64_t files_skipped_binary = 0;
    std::int64_t files_skipped_large = 0;
    std::int64_t files_unreadable = 0;
    std::int64_t files_budget_exceeded = 0;

    bool operator==(const ScanCounters&) const = default;
};

struct ScanResult {
    std::vector<RawFinding> findings;  // ordered by (file, line, class)
    ScanCounters counters;
};

// Built-in detector set covering all fifteen classes.
std::vector<PatternClass> default_patterns();

// Loads a pattern file: `[CLASS]` headers followed by one regex per line,
// optional `extensions: .py .js` lines, `#` comments. The file replaces the
// built-ins and must still cover every class. Throws std::runtime_error on
// unknown classes, invalid regexes, empty-matching regexes or missing classes.
std::vector<PatternClass> load_patterns_file(const std::filesystem::path& file);

// Stable id for a finding; independent of scan order and machine.
std::string finding_id(std::string_view file, int line, AlgorithmClass algorithm);

// Lines [line-window, line+window] (1-based, clamped) joined with '\n'.
// Throws std::out_of_range when line is outside the file.
std::string extract_context(std::string_view content, int line, int window);

// Glob match against a '/'-separated relative path. `*`/`?` stay within one
// segment, `**` crosses segments; a glob without '/' also matches the
// basename alone.
bool path_matches_glob(std::string_view path, std::string_view glob);

// Scans one file's content. Emits at most one finding per (line, class);
// a line that carries an RSA1024 match suppresses the generic RSA match.
// Findings are ordered by (line, class). When the per-file match budget runs
// out the scan stops early and *budget_exceeded (if given) is set.
std::vector<RawFinding> scan_file(const std::string& path, std::string_view content,
                                  const std::vector<PatternClass>& patterns,
                                  const ScanConfig& config,
                                  bool* budget_exceeded = nullptr);

// Walks the tree under config.root: applies extension eligibility and
// exclusion globs, skips binary/oversized/unreadable files with counters,
// and returns findings sorted by (file, line, class). Worker count affects
// timing only, never output.
ScanResult scan_tree(const ScanConfig& config, const std::vector<PatternClass>& patterns);

}  // namespace pqcaudit
