#include <doctest.h>

#include "pqcaudit/scanner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pqcaudit/util.hpp"

using namespace pqcaudit;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = PQCAUDIT_FIXTURE_DIR;

// Creates a throwaway directory tree that is removed when the test ends.
class TempTree {
public:
    TempTree() {
        static std::mt19937_64 rng(std::random_device{}());
        root_ = fs::temp_directory_path() /
                ("pqcaudit-test-" + std::to_string(rng()));
        fs::create_directories(root_);
    }
    ~TempTree() {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }

    const fs::path& root() const { return root_; }

    fs::path write(const std::string& relative, const std::string& content) {
        const fs::path full = root_ / relative;
        fs::create_directories(full.parent_path());
        std::ofstream out(full, std::ios::binary);
        out << content;
        return full;
    }

private:
    fs::path root_;
};

std::set<AlgorithmClass> classes_in(const std::vector<RawFinding>& findings,
                                    const std::string& file = "") {
    std::set<AlgorithmClass> out;
    for (const RawFinding& f : findings) {
        if (file.empty() || f.file == file) out.insert(f.algorithm);
    }
    return out;
}

ScanConfig corpus_config() {
    ScanConfig config;
    config.root = kFixtures / "corpus";
    config.repo = "corpus";
    return config;
}

}  // namespace

TEST_CASE("finding ids are stable chained hashes") {
    CHECK(finding_id("src/a.py", 3, AlgorithmClass::Rsa) == "87478c32adcf041d");
    CHECK(finding_id("src/a.py", 4, AlgorithmClass::Rsa) == "73564a3cc35ca6e0");
    CHECK(finding_id("src/a.py", 3, AlgorithmClass::Md5) == "4a5d85328b39e9ef");
    CHECK(finding_id("src/a.py", 3, AlgorithmClass::Rsa) ==
          finding_id("src/a.py", 3, AlgorithmClass::Rsa));
}

TEST_CASE("extract_context clamps the window to the file") {
    const std::string content = "l1\nl2\nl3\nl4\nl5\n";
    CHECK(extract_context(content, 3, 1) == "l2\nl3\nl4");
    CHECK(extract_context(content, 1, 2) == "l1\nl2\nl3");
    CHECK(extract_context(content, 5, 2) == "l3\nl4\nl5");
    CHECK(extract_context(content, 3, 0) == "l3");
    CHECK(extract_context(content, 3, 50) == "l1\nl2\nl3\nl4\nl5");
    CHECK_THROWS_AS(extract_context(content, 6, 1), std::out_of_range);
    CHECK_THROWS_AS(extract_context(content, 0, 1), std::out_of_range);
}

TEST_CASE("path_matches_glob semantics") {
    CHECK(path_matches_glob("third_party/legacy_md5.c", "third_party/**"));
    CHECK(path_matches_glob("a/b/c.py", "**/*.py"));
    CHECK(path_matches_glob("c.py", "**/*.py"));
    CHECK(path_matches_glob("a/b.js", "a/*.js"));
    CHECK_FALSE(path_matches_glob("a/x/b.js", "a/*.js"));
    CHECK(path_matches_glob("x/vendor/a.py", "**/vendor/**"));
    CHECK(path_matches_glob("deep/nested/dir/file.go", "deep/**"));

    // A glob without '/' also tries the basename alone.
    CHECK(path_matches_glob("a/b.js", "*.js"));
    CHECK(path_matches_glob("a/b.js", "b.js"));
    CHECK_FALSE(path_matches_glob("node_modules/x/y.js", "node_modules"));
    CHECK(path_matches_glob("node_modules/x/y.js", "node_modules/**"));

    // '?' spans one character inside a segment.
    CHECK(path_matches_glob("src/a1.py", "src/a?.py"));
    CHECK_FALSE(path_matches_glob("src/a12.py", "src/a?.py"));

    // Regex specials in globs are literal.
    CHECK(path_matches_glob("a+b/c.py", "a+b/*.py"));
    CHECK_FALSE(path_matches_glob("aab/c.py", "a+b/*.py"));
}

TEST_CASE("scan_file token boundaries treat '_' as a separator") {
    const auto patterns = default_patterns();
    ScanConfig config;
    config.repo = "unit";

    const auto scan = [&](const std::string& content) {
        return scan_file("src/x.py", content, patterns, config);
    };

    CHECK(classes_in(scan("EVP_aes_128_gcm(ctx)")) ==
          std::set<AlgorithmClass>{AlgorithmClass::Aes128});
    CHECK(classes_in(scan("import rsa\n")) ==
          std::set<AlgorithmClass>{AlgorithmClass::Rsa});
    CHECK(classes_in(scan("generate_rsa_key()")) ==
          std::set<AlgorithmClass>{AlgorithmClass::Rsa});
    CHECK(scan("XRSA").empty());
    CHECK(scan("parsecdsa").empty());
    CHECK(scan("rsax").empty());
    CHECK(classes_in(scan("use sha-1 here")) ==
          std::set<AlgorithmClass>{AlgorithmClass::Sha1});
    CHECK(scan("sha256").empty());
    CHECK(scan("md5sum is fine? no:").size() == 1);  // md5 token still present
}

TEST_CASE("scan_file emits one finding per line and class") {
    const auto patterns = default_patterns();
    ScanConfig config;
    config.repo = "unit";

    const auto findings = scan_file("src/x.py", "md5 md5 md5\n", patterns, config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].algorithm == AlgorithmClass::Md5);
    CHECK(findings[0].line == 1);
    CHECK(findings[0].confidence == 0.5);
    CHECK(findings[0].id == finding_id("src/x.py", 1, AlgorithmClass::Md5));
    CHECK(findings[0].repo == "unit");
}

TEST_CASE("RSA1024 suppresses the generic RSA match on the same line") {
    const auto patterns = default_patterns();
    ScanConfig config;
    config.repo = "unit";

    const auto same_line =
        scan_file("src/x.py", "rsa key of 1024 bits\n", patterns, config);
    CHECK(classes_in(same_line) == std::set<AlgorithmClass>{AlgorithmClass::Rsa1024});

    const auto split =
        scan_file("src/x.py", "rsa here\nonly 1024 there\n", patterns, config);
    CHECK(classes_in(split) == std::set<AlgorithmClass>{AlgorithmClass::Rsa});
    REQUIRE(split.size() == 1);
    CHECK(split[0].line == 1);
}

TEST_CASE("scan_file honors the per-file match budget") {
    // One single-regex pattern set: each line costs one regex_search call, so
    // a million-and-one lines exhaust kMatchBudgetPerFile.
    std::vector<PatternClass> patterns;
    PatternClass pc;
    pc.algorithm = AlgorithmClass::Rsa;
    pc.pattern_texts = {"(^|[^a-z0-9])rsa(?![a-z0-9])"};
    pc.patterns.emplace_back(pc.pattern_texts[0],
                             std::regex::ECMAScript | std::regex::icase |
                                 std::regex::optimize);
    patterns.push_back(std::move(pc));

    std::string content = "rsa\n";
    content.reserve(2 * kMatchBudgetPerFile + 8);
    for (std::uint64_t i = 0; i <= kMatchBudgetPerFile; ++i) content += "k\n";

    ScanConfig config;
    config.repo = "unit";
    bool exceeded = false;
    const auto findings = scan_file("src/x.py", content, patterns, config, &exceeded);
    CHECK(exceeded);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].line == 1);

    bool small_exceeded = true;
    scan_file("src/x.py", "rsa\n", patterns, config, &small_exceeded);
    CHECK_FALSE(small_exceeded);
}

TEST_CASE("the fixture corpus triggers every class exactly where planted") {
    const ScanResult result = scan_tree(corpus_config(), default_patterns());

    CHECK(classes_in(result.findings).size() ==
          static_cast<std::size_t>(kAlgorithmClassCount));

    const std::map<std::string, std::set<AlgorithmClass>> expected{
        {"src/rsa_keygen.py", {AlgorithmClass::Rsa}},
        {"src/ecdsa_sign.py", {AlgorithmClass::Ecdsa}},
        {"src/ecdh_kex.c", {AlgorithmClass::Ecdh}},
        {"src/dsa_legacy.java", {AlgorithmClass::Dsa}},
        {"src/dh_params.c", {AlgorithmClass::Dh}},
        {"src/x25519_session.rs", {AlgorithmClass::X25519}},
        {"src/ed25519_verify.go", {AlgorithmClass::Ed25519}},
        {"src/pkcs1_padding.py", {AlgorithmClass::Pkcs1V15}},
        {"src/aes128_cipher.java", {AlgorithmClass::Aes128}},
        {"src/triple_des_cbc.py", {AlgorithmClass::TripleDes}},
        {"src/rc4_stream.c", {AlgorithmClass::Rc4}},
        {"src/md5_digest.js", {AlgorithmClass::Md5}},
        {"src/sha1_fingerprint.rb", {AlgorithmClass::Sha1}},
        {"src/hardcoded_key.ts", {AlgorithmClass::HardcodedKey}},
        {"src/rsa1024_legacy.py", {AlgorithmClass::Rsa1024}},
        {"tests/test_hash_compat.py", {AlgorithmClass::Md5}},
        {"tests/test_cipher_modes.py", {AlgorithmClass::Aes128}},
        {"third_party/legacy_md5.c", {AlgorithmClass::Md5}},
    };

    std::map<std::string, std::set<AlgorithmClass>> actual;
    for (const RawFinding& f : result.findings) actual[f.file].insert(f.algorithm);
    for (const auto& [file, classes] : expected) {
        INFO("file: " << file);
        CHECK(actual.count(file) == 1);
        CHECK(actual[file] == classes);
    }
    for (const auto& [file, classes] : actual) {
        INFO("unexpected findings in: " << file);
        CHECK(expected.count(file) == 1);
    }

    // The five negative files stay silent.
    for (const RawFinding& f : result.findings) {
        CHECK(f.file.rfind("negatives/", 0) == std::string::npos);
    }

    CHECK(result.counters.files_seen == 23);
    CHECK(result.counters.files_scanned == 23);
    CHECK(result.counters.files_excluded == 0);
    CHECK(result.counters.files_skipped_binary == 0);
    CHECK(result.counters.files_skipped_large == 0);
    CHECK(result.counters.files_budget_exceeded == 0);

    // Findings arrive sorted by (file, line, class ordinal).
    const auto ordered = [](const RawFinding& a, const RawFinding& b) {
        return std::tie(a.file, a.line, a.algorithm) <
               std::tie(b.file, b.line, b.algorithm);
    };
    CHECK(std::is_sorted(result.findings.begin(), result.findings.end(), ordered));
}

TEST_CASE("exclusion globs remove whole subtrees from the scan") {
    ScanConfig config = corpus_config();
    config.exclude_globs = {"third_party/**"};
    const ScanResult result = scan_tree(config, default_patterns());

    for (const RawFinding& f : result.findings) {
        CHECK(f.file.rfind("third_party/", 0) == std::string::npos);
    }
    CHECK(result.counters.files_excluded == 1);
    CHECK(result.counters.files_scanned == 22);

    ScanConfig both = corpus_config();
    both.exclude_globs = {"third_party/**", "tests/**"};
    const ScanResult trimmed = scan_tree(both, default_patterns());
    CHECK(trimmed.counters.files_excluded == 3);
    // Every class is still represented by the src/ positives alone.
    CHECK(classes_in(trimmed.findings).size() ==
          static_cast<std::size_t>(kAlgorithmClassCount));
}

TEST_CASE("scan results are worker-count independent") {
    ScanConfig serial = corpus_config();
    serial.threads = 1;
    ScanConfig parallel = corpus_config();
    parallel.threads = 4;

    const ScanResult a = scan_tree(serial, default_patterns());
    const ScanResult b = scan_tree(parallel, default_patterns());
    CHECK(a.findings == b.findings);
    CHECK(a.counters == b.counters);
}

TEST_CASE("binary, oversized and ineligible files are skipped with counters") {
    TempTree tree;
    tree.write("src/ok.py", "import rsa\n");
    tree.write("src/null.py", std::string("hello\0world\n", 12));
    tree.write("src/bad_utf8.py", "caf\xE9\n");
    tree.write("src/huge.py", std::string(4096, 'x'));
    tree.write("notes.txt", "rsa everywhere\n");

    ScanConfig config;
    config.root = tree.root();
    config.repo = "tmp";
    config.max_file_bytes = 1024;

    const ScanResult result = scan_tree(config, default_patterns());
    CHECK(result.counters.files_seen == 5);
    CHECK(result.counters.files_scanned == 1);
    CHECK(result.counters.files_skipped_binary == 2);
    CHECK(result.counters.files_skipped_large == 1);
    REQUIRE(result.findings.size() == 1);
    CHECK(result.findings[0].file == "src/ok.py");
    CHECK(result.findings[0].algorithm == AlgorithmClass::Rsa);
}

TEST_CASE("context snippets obey the configured window") {
    TempTree tree;
    tree.write("src/a.py", "one\ntwo\nimport rsa\nfour\nfive\n");

    ScanConfig config;
    config.root = tree.root();
    config.repo = "tmp";
    config.context_window = 1;

    const ScanResult result = scan_tree(config, default_patterns());
    REQUIRE(result.findings.size() == 1);
    CHECK(result.findings[0].line == 3);
    CHECK(result.findings[0].context_snippet == "two\nimport rsa\nfour");
    CHECK(result.findings[0].matched_text == "rsa");
}

TEST_CASE("the shipped pattern file reproduces the built-in detectors") {
    const auto from_file = load_patterns_file(PQCAUDIT_PATTERNS_FILE);
    REQUIRE(from_file.size() == static_cast<std::size_t>(kAlgorithmClassCount));

    const ScanResult builtin = scan_tree(corpus_config(), default_patterns());
    const ScanResult loaded = scan_tree(corpus_config(), from_file);
    CHECK(builtin.findings == loaded.findings);
}

TEST_CASE("pattern files validate their classes, regexes and coverage") {
    TempTree tree;

    SUBCASE("a class set missing entries is rejected") {
        const auto file = tree.write("partial.patterns", "[RSA]\nrsa\n");
        CHECK_THROWS_AS(load_patterns_file(file), std::runtime_error);
    }
    SUBCASE("unknown class headers are rejected") {
        const auto file = tree.write("unknown.patterns", "[ROT13]\nrot13\n");
        CHECK_THROWS_AS(load_patterns_file(file), std::runtime_error);
    }
    SUBCASE("invalid regexes are rejected") {
        const auto file = tree.write("broken.patterns", "[RSA]\n(rsa\n");
        CHECK_THROWS_AS(load_patterns_file(file), std::runtime_error);
    }
    SUBCASE("regexes that match the empty string are rejected") {
        const auto file = tree.write("empty.patterns", "[RSA]\n(rsa)*\n");
        CHECK_THROWS_AS(load_patterns_file(file), std::runtime_error);
    }
    SUBCASE("pattern lines before a header are rejected") {
        const auto file = tree.write("headless.patterns", "rsa\n[RSA]\nrsa\n");
        CHECK_THROWS_AS(load_patterns_file(file), std::runtime_error);
    }
    SUBCASE("a missing file is reported") {
        CHECK_THROWS_AS(load_patterns_file(tree.root() / "nope.patterns"),
                        std::runtime_error);
    }
}

TEST_CASE("per-class extension restrictions narrow where a detector fires") {
    // Build a full pattern file, then restrict MD5 to JavaScript sources.
    std::string text;
    for (AlgorithmClass c : all_algorithm_classes()) {
        text += "[" + std::string(to_string(c)) + "]\n";
        if (c == AlgorithmClass::Md5) {
            text += "extensions: .js\n";
            text += "(^|[^a-z0-9])md5(?![0-9])\n";
        } else {
            // Unique placeholder token per class keeps the file valid.
            text += "zz" + lower_copy(std::string(to_string(c))) + "zz\n";
        }
    }
    TempTree tree;
    const auto file = tree.write("restricted.patterns", text);
    const auto patterns = load_patterns_file(file);

    ScanConfig config;
    config.repo = "unit";
    CHECK(scan_file("src/hash.py", "md5\n", patterns, config).empty());
    CHECK(scan_file("src/hash.js", "md5\n", patterns, config).size() == 1);
}
