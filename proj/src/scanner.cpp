#include "pqcaudit/scanner.hpp"

#include <atomic>
#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "pqcaudit/util.hpp"

namespace pqcaudit {

namespace {

// Identifier boundaries: crypto API names glue tokens together with '_'
// ("EVP_aes_128_gcm", "RC4_set_key"), so '_' must count as a separator and
// std::regex \b must not be relied on. Left boundaries consume one junk
// character which is trimmed off the reported match text.
struct DefaultPattern {
    AlgorithmClass algorithm;
    const char* regex;
};

constexpr DefaultPattern kDefaultPatternTable[] = {
    {AlgorithmClass::Rsa, R"((^|[^a-z0-9])rsa(?![a-z0-9]))"},
    {AlgorithmClass::Ecdsa, R"((^|[^a-z0-9])ecdsa(?![a-z0-9]))"},
    {AlgorithmClass::Ecdh, R"((^|[^a-z0-9])ecdhe?(?![a-z0-9]))"},
    {AlgorithmClass::Dsa, R"((^|[^a-z0-9])dsa(?![a-z0-9]))"},
    {AlgorithmClass::Dh, R"(diffie[-_ ]?hellman)"},
    {AlgorithmClass::Dh, R"((^|[^a-z0-9])dh_(?:new|free|check|generate|compute|get)[a-z0-9_]*)"},
    {AlgorithmClass::Dh,
     R"((^|[^a-z0-9])dhe?(?![a-z0-9])(?=[^\r\n]*(?:key|param|group|prime|exchange)))"},
    {AlgorithmClass::X25519, R"((^|[^a-z0-9])(?:x25519|curve[-_ ]?25519))"},
    {AlgorithmClass::Ed25519, R"((^|[^a-z0-9])ed25519)"},
    {AlgorithmClass::Pkcs1V15, R"(pkcs[\s#]*1[\s_-]*v\s*1[._-]?5(?![0-9]))"},
    {AlgorithmClass::Pkcs1V15, R"(pkcs1[-_]?padding)"},
    {AlgorithmClass::Aes128, R"(aes[\s_-]?128(?![0-9]))"},
    {AlgorithmClass::TripleDes,
     R"((^|[^a-z0-9])(?:3des(?![a-z0-9])|des3|triple[-_ ]?des|des[-_ ]?ede))"},
    {AlgorithmClass::Rc4, R"((^|[^a-z0-9])(?:rc4(?![0-9])|arcfour))"},
    {AlgorithmClass::Md5, R"((^|[^a-z0-9])md5(?![0-9]))"},
    {AlgorithmClass::Sha1, R"((^|[^a-z0-9])sha[-_]?1(?![0-9]))"},
    {AlgorithmClass::HardcodedKey,
     R"([a-z0-9_]*(?:key|secret|priv)[a-z0-9_]*\s*[:=]\s*["'][a-z0-9+/=]{32,}["'])"},
    {AlgorithmClass::Rsa1024,
     R"((^|[^a-z0-9])rsa(?![a-z0-9]).*(?:^|[^0-9])1024(?![0-9]))"},
    {AlgorithmClass::Rsa1024,
     R"((?:^|[^0-9])1024(?![0-9]).*(^|[^a-z0-9])rsa(?![a-z0-9]))"},
};

std::regex compile_pattern(const std::string& text) {
    return std::regex(text, std::regex::ECMAScript | std::regex::icase |
                                std::regex::optimize);
}

void require_not_empty_matching(const std::string& text) {
    static const std::string empty;
    if (std::regex_search(empty, compile_pattern(text))) {
        throw std::runtime_error("pattern matches the empty string: " + text);
    }
}

std::string trim_match_text(std::string text) {
    std::size_t begin = 0;
    while (begin < text.size() &&
           !std::isalnum(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    return text.substr(begin);
}

bool looks_binary(std::string_view content) {
    const std::size_t probe = std::min<std::size_t>(content.size(), 8192);
    return content.substr(0, probe).find('\0') != std::string_view::npos;
}

bool valid_utf8(std::string_view content) {
    std::size_t i = 0;
    const std::size_t n = content.size();
    while (i < n) {
        const auto byte = static_cast<unsigned char>(content[i]);
        std::size_t extra = 0;
        if (byte < 0x80) {
            extra = 0;
        } else if ((byte & 0xe0) == 0xc0) {
            extra = 1;
        } else if ((byte & 0xf0) == 0xe0) {
            extra = 2;
        } else if ((byte & 0xf8) == 0xf0) {
            extra = 3;
        } else {
            return false;
        }
        if (i + extra >= n && extra > 0) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(content[i + k]) & 0xc0) != 0x80) return false;
        }
        i += extra + 1;
    }
    return true;
}

std::string glob_to_regex(std::string_view glob) {
    std::string re = "^";
    std::size_t i = 0;
    while (i < glob.size()) {
        const char c = glob[i];
        if (c == '*') {
            if (i + 1 < glob.size() && glob[i + 1] == '*') {
                if (i + 2 < glob.size() && glob[i + 2] == '/') {
                    re += "(?:[^/]+/)*";  // "**/" spans zero or more segments
                    i += 3;
                } else {
                    re += ".*";
                    i += 2;
                }
            } else {
                re += "[^/]*";
                ++i;
            }
            continue;
        }
        if (c == '?') {
            re += "[^/]";
            ++i;
            continue;
        }
        if (std::strchr("\\^$.|+()[]{}", c) != nullptr) {
            re += '\\';
        }
        re += c;
        ++i;
    }
    re += '$';
    return re;
}

struct CompiledGlob {
    std::regex regex;
    bool basename_only = false;
};

std::vector<CompiledGlob> compile_globs(const std::vector<std::string>& globs) {
    std::vector<CompiledGlob> out;
    out.reserve(globs.size());
    for (const std::string& g : globs) {
        out.push_back({std::regex(glob_to_regex(g)),
                       g.find('/') == std::string::npos});
    }
    return out;
}

bool matches_any_glob(const std::vector<CompiledGlob>& globs, const std::string& path) {
    std::string basename = path;
    if (const std::size_t slash = path.rfind('/'); slash != std::string::npos) {
        basename = path.substr(slash + 1);
    }
    for (const CompiledGlob& g : globs) {
        if (std::regex_match(path, g.regex)) return true;
        if (g.basename_only && std::regex_match(basename, g.regex)) return true;
    }
    return false;
}

std::string extension_of(const std::string& path) {
    const std::size_t slash = path.rfind('/');
    const std::size_t dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    if (slash != std::string::npos && dot < slash) return "";
    return lower_copy(path.substr(dot));
}

bool pattern_applies(const PatternClass& pc, const std::string& extension) {
    return pc.applicable_extensions.empty() ||
           pc.applicable_extensions.count(extension) > 0;
}

}  // namespace

const std::set<std::string>& default_eligible_extensions() {
    static const std::set<std::string> kExtensions{
        ".py", ".js", ".ts", ".jsx", ".tsx", ".java", ".go", ".rb",
        ".c",  ".cc", ".cpp", ".cxx", ".h",  ".hh",  ".hpp", ".rs",
        ".cs", ".php", ".kt", ".kts", ".swift", ".scala", ".m",
    };
    return kExtensions;
}

std::vector<PatternClass> default_patterns() {
    std::vector<PatternClass> out;
    for (AlgorithmClass algorithm : all_algorithm_classes()) {
        PatternClass pc;
        pc.algorithm = algorithm;
        for (const DefaultPattern& entry : kDefaultPatternTable) {
            if (entry.algorithm != algorithm) continue;
            pc.pattern_texts.emplace_back(entry.regex);
            pc.patterns.push_back(compile_pattern(entry.regex));
        }
        out.push_back(std::move(pc));
    }
    return out;
}

std::vector<PatternClass> load_patterns_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw std::runtime_error("cannot open pattern file: " + file.string());
    }

    std::map<AlgorithmClass, PatternClass> by_class;
    std::optional<AlgorithmClass> current;
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string line = trim_copy(raw_line);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = file.string() + ":" + std::to_string(line_no);

        // A header is a whole line of the form [IDENTIFIER]; anything else
        // that happens to open with '[' is a pattern (character classes are
        // legal at the start of a regex).
        static const std::regex header_shape(R"(\[[A-Za-z0-9_]+\])");
        if (std::regex_match(line, header_shape)) {
            const std::string name = line.substr(1, line.size() - 2);
            const auto algorithm = algorithm_class_from_string(name);
            if (!algorithm) {
                throw std::runtime_error(where + ": unknown algorithm class '" + name + "'");
            }
            current = *algorithm;
            by_class[*current].algorithm = *current;
            continue;
        }
        if (!current) {
            throw std::runtime_error(where + ": pattern line before any [CLASS] header");
        }
        if (line.rfind("extensions:", 0) == 0) {
            std::string rest = line.substr(std::strlen("extensions:"));
            std::string token;
            for (char c : rest + " ") {
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!token.empty()) {
                        by_class[*current].applicable_extensions.insert(lower_copy(token));
                        token.clear();
                    }
                } else {
                    token += c;
                }
            }
            continue;
        }

        try {
            require_not_empty_matching(line);
            by_class[*current].patterns.push_back(compile_pattern(line));
            by_class[*current].pattern_texts.push_back(line);
        } catch (const std::regex_error& e) {
            throw std::runtime_error(where + ": invalid regex: " + e.what());
        }
    }

    std::vector<PatternClass> out;
    for (AlgorithmClass algorithm : all_algorithm_classes()) {
        const auto it = by_class.find(algorithm);
        if (it == by_class.end() || it->second.patterns.empty()) {
            throw std::runtime_error("pattern file " + file.string() +
                                     " has no pattern for class " +
                                     std::string(to_string(algorithm)));
        }
        out.push_back(std::move(it->second));
    }
    return out;
}

std::string finding_id(std::string_view file, int line, AlgorithmClass algorithm) {
    std::uint64_t h = fnv1a64(file);
    h = fnv1a64(":", h);
    h = fnv1a64(std::to_string(line), h);
    h = fnv1a64(":", h);
    h = fnv1a64(to_string(algorithm), h);
    return to_hex(h);
}

std::string extract_context(std::string_view content, int line, int window) {
    if (window < 0) throw std::invalid_argument("extract_context: window must be >= 0");
    const std::vector<std::string> lines = split_lines(content);
    if (line < 1 || static_cast<std::size_t>(line) > lines.size()) {
        throw std::out_of_range("extract_context: line " + std::to_string(line) +
                                " outside file of " + std::to_string(lines.size()) +
                                " lines");
    }
    const std::size_t lo = static_cast<std::size_t>(std::max(1, line - window));
    const std::size_t hi =
        std::min(lines.size(), static_cast<std::size_t>(line) + static_cast<std::size_t>(window));
    std::string out;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (i > lo) out += '\n';
        out += lines[i - 1];
    }
    return out;
}

bool path_matches_glob(std::string_view path, std::string_view glob) {
    const std::vector<CompiledGlob> compiled = compile_globs({std::string(glob)});
    return matches_any_glob(compiled, std::string(path));
}

std::vector<RawFinding> scan_file(const std::string& path, std::string_view content,
                                  const std::vector<PatternClass>& patterns,
                                  const ScanConfig& config, bool* budget_exceeded) {
    const std::vector<std::string> lines = split_lines(content);
    const std::string extension = extension_of(path);

    struct Hit {
        std::string matched_text;
    };
    std::map<std::pair<int, int>, Hit> hits;  // (line, class order) -> first match

    std::uint64_t budget = kMatchBudgetPerFile;
    bool budget_exhausted = false;

    for (std::size_t line_idx = 0; line_idx < lines.size() && !budget_exhausted; ++line_idx) {
        const std::string& line = lines[line_idx];
        for (const PatternClass& pc : patterns) {
            if (!pattern_applies(pc, extension)) continue;
            for (const std::regex& re : pc.patterns) {
                if (budget == 0) {
                    budget_exhausted = true;
                    break;
                }
                --budget;
                std::smatch match;
                if (std::regex_search(line, match, re)) {
                    const std::pair<int, int> key{static_cast<int>(line_idx) + 1,
                                                  static_cast<int>(pc.algorithm)};
                    hits.emplace(key, Hit{trim_match_text(match.str())});
                    break;  // one finding per (line, class)
                }
            }
            if (budget_exhausted) break;
        }
    }

    // A line carrying a keyed RSA-1024 hit is reported as RSA1024 only.
    for (auto it = hits.begin(); it != hits.end();) {
        const auto [line_no, class_order] = it->first;
        if (class_order == static_cast<int>(AlgorithmClass::Rsa) &&
            hits.count({line_no, static_cast<int>(AlgorithmClass::Rsa1024)}) > 0) {
            it = hits.erase(it);
        } else {
            ++it;
        }
    }

    std::vector<RawFinding> findings;
    findings.reserve(hits.size());
    for (const auto& [key, hit] : hits) {
        RawFinding f;
        f.repo = config.repo;
        f.file = path;
        f.line = key.first;
        f.algorithm = static_cast<AlgorithmClass>(key.second);
        f.id = finding_id(f.file, f.line, f.algorithm);
        f.matched_text = hit.matched_text;
        f.context_snippet = extract_context(content, f.line, config.context_window);
        f.confidence = 0.5;
        findings.push_back(std::move(f));
    }
    // std::map iteration already yields (line, class) order; keep it explicit.
    std::sort(findings.begin(), findings.end(), [](const RawFinding& a, const RawFinding& b) {
        return std::pair(a.line, static_cast<int>(a.algorithm)) <
               std::pair(b.line, static_cast<int>(b.algorithm));
    });

    if (budget_exceeded != nullptr) *budget_exceeded = budget_exhausted;
    return findings;
}

namespace {

struct FileOutcome {
    std::vector<RawFinding> findings;
    enum class Status { Scanned, Binary, TooLarge, Unreadable, BudgetExceeded } status =
        Status::Scanned;
};

FileOutcome scan_one_file(const std::filesystem::path& absolute, const std::string& relative,
                          const std::vector<PatternClass>& patterns, const ScanConfig& config) {
    FileOutcome outcome;

    std::error_code ec;
    const std::uintmax_t size = std::filesystem::file_size(absolute, ec);
    if (ec) {
        outcome.status = FileOutcome::Status::Unreadable;
        return outcome;
    }
    if (size > config.max_file_bytes) {
        outcome.status = FileOutcome::Status::TooLarge;
        return outcome;
    }

    std::ifstream in(absolute, std::ios::binary);
    if (!in) {
        outcome.status = FileOutcome::Status::Unreadable;
        return outcome;
    }
    std::string content(static_cast<std::size_t>(size), '\0');
    if (size > 0 && !in.read(content.data(), static_cast<std::streamsize>(size))) {
        outcome.status = FileOutcome::Status::Unreadable;
        return outcome;
    }

    if (looks_binary(content) || !valid_utf8(content)) {
        outcome.status = FileOutcome::Status::Binary;
        return outcome;
    }

    bool budget_exceeded = false;
    outcome.findings = scan_file(relative, content, patterns, config, &budget_exceeded);
    if (budget_exceeded) outcome.status = FileOutcome::Status::BudgetExceeded;
    return outcome;
}

}  // namespace

ScanResult scan_tree(const ScanConfig& config, const std::vector<PatternClass>& patterns) {
    namespace fs = std::filesystem;
    if (!fs::exists(config.root) || !fs::is_directory(config.root)) {
        throw std::runtime_error("scan root is not a directory: " + config.root.string());
    }

    ScanResult result;
    const std::vector<CompiledGlob> exclusions = compile_globs(config.exclude_globs);

    std::vector<std::pair<fs::path, std::string>> work;  // absolute, repo-relative
    for (auto it = fs::recursive_directory_iterator(
             config.root, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        ++result.counters.files_seen;

        const fs::path& absolute = it->path();
        const std::string relative =
            absolute.lexically_relative(config.root).generic_string();
        if (config.eligible_extensions.count(extension_of(relative)) == 0) continue;
        if (matches_any_glob(exclusions, relative)) {
            ++result.counters.files_excluded;
            continue;
        }
        work.emplace_back(absolute, relative);
    }
    std::sort(work.begin(), work.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<FileOutcome> outcomes(work.size());
    const int thread_count =
        std::max(1, std::min<int>(config.threads, static_cast<int>(work.size())));
    if (thread_count <= 1) {
        for (std::size_t i = 0; i < work.size(); ++i) {
            outcomes[i] = scan_one_file(work[i].first, work[i].second, patterns, config);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= work.size()) break;
                outcomes[i] = scan_one_file(work[i].first, work[i].second, patterns, config);
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    for (FileOutcome& outcome : outcomes) {
        switch (outcome.status) {
            case FileOutcome::Status::Scanned:
                ++result.counters.files_scanned;
                break;
            case FileOutcome::Status::Binary:
                ++result.counters.files_skipped_binary;
                continue;
            case FileOutcome::Status::TooLarge:
                ++result.counters.files_skipped_large;
                continue;
            case FileOutcome::Status::Unreadable:
                ++result.counters.files_unreadable;
                continue;
            case FileOutcome::Status::BudgetExceeded:
                ++result.counters.files_budget_exceeded;
                ++result.counters.files_scanned;
                break;
        }
        result.findings.insert(result.findings.end(),
                               std::make_move_iterator(outcome.findings.begin()),
                               std::make_move_iterator(outcome.findings.end()));
    }

    std::sort(result.findings.begin(), result.findings.end(),
              [](const RawFinding& a, const RawFinding& b) {
                  return std::tie(a.file, a.line, a.algorithm) <
                         std::tie(b.file, b.line, b.algorithm);
              });
    return result;
}

}  // namespace pqcaudit
