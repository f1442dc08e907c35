#include <doctest.h>

#include "pqcaudit/enrichment.hpp"
#include "pqcaudit/remote_client.hpp"
#include "pqcaudit/scanner.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

using namespace pqcaudit;

namespace {

RawFinding make_finding(std::string file, int line, AlgorithmClass algorithm,
                        std::string snippet = "plain production code") {
    RawFinding f;
    f.id = finding_id(file, line, algorithm);
    f.repo = "unit";
    f.file = std::move(file);
    f.line = line;
    f.algorithm = algorithm;
    f.matched_text = "token";
    f.context_snippet = std::move(snippet);
    f.confidence = 0.5;
    return f;
}

RemoteResult ok_result(ContextLabel context, Severity severity, double confidence) {
    RemoteResult r;
    r.status = RemoteStatus::Ok;
    r.classification = {context, severity, confidence};
    return r;
}

RemoteResult status_result(RemoteStatus status) {
    RemoteResult r;
    r.status = status;
    return r;
}

// Scripted classifier: per-finding response queues, then a default Ok.
// Thread-safe so concurrency tests can share it.
class FakeRemote : public RemoteClassifier {
public:
    void script(const std::string& finding_id, std::vector<RemoteResult> responses) {
        std::lock_guard lock(mutex_);
        auto& queue = scripts_[finding_id];
        queue.insert(queue.end(), responses.begin(), responses.end());
    }

    RemoteResult classify(const RawFinding& finding) override {
        std::lock_guard lock(mutex_);
        calls_.push_back(finding.id);
        auto it = scripts_.find(finding.id);
        if (it != scripts_.end() && !it->second.empty()) {
            RemoteResult r = it->second.front();
            it->second.pop_front();
            return r;
        }
        return ok_result(ContextLabel::Production, Severity::High, 0.9);
    }

    std::vector<std::string> calls() const {
        std::lock_guard lock(mutex_);
        return calls_;
    }
    int call_count(const std::string& finding_id) const {
        std::lock_guard lock(mutex_);
        int n = 0;
        for (const auto& id : calls_) n += id == finding_id;
        return n;
    }

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::deque<RemoteResult>> scripts_;
    std::vector<std::string> calls_;
};

class SleepRecorder {
public:
    Enricher::Sleeper sleeper() {
        return [this](double seconds) {
            std::lock_guard lock(mutex_);
            sleeps_.push_back(seconds);
        };
    }
    std::vector<double> sleeps() const {
        std::lock_guard lock(mutex_);
        return sleeps_;
    }

private:
    mutable std::mutex mutex_;
    std::vector<double> sleeps_;
};

}  // namespace

TEST_CASE("production_severity follows attack path and break class") {
    // Full Shor breaks are critical across the board.
    CHECK(production_severity(AlgorithmClass::Rsa) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Ecdsa) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Ecdh) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Dsa) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Dh) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::X25519) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Ed25519) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Pkcs1V15) == Severity::Critical);
    CHECK(production_severity(AlgorithmClass::Rsa1024) == Severity::Critical);
    // Grover-weakened primitives are medium unless already failing classically.
    CHECK(production_severity(AlgorithmClass::Aes128) == Severity::Medium);
    CHECK(production_severity(AlgorithmClass::Md5) == Severity::Medium);
    CHECK(production_severity(AlgorithmClass::Sha1) == Severity::Medium);
    CHECK(production_severity(AlgorithmClass::TripleDes) == Severity::High);
    CHECK(production_severity(AlgorithmClass::Rc4) == Severity::High);
    CHECK(production_severity(AlgorithmClass::HardcodedKey) == Severity::High);
}

TEST_CASE("heuristic_classify recognizes test paths by exact segment") {
    const Classification test_hit =
        heuristic_classify(make_finding("tests/unit/crypto.py", 3, AlgorithmClass::Rsa));
    CHECK(test_hit.context == ContextLabel::Test);
    CHECK(test_hit.severity == Severity::Low);
    CHECK(test_hit.confidence == 0.9);

    CHECK(heuristic_classify(make_finding("spec/sign_spec.rb", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Test);
    CHECK(heuristic_classify(make_finding("examples/demo.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Test);
    CHECK(heuristic_classify(make_finding("pkg/fixtures/data.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Test);
    CHECK(heuristic_classify(make_finding("Tests/crypto.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Test);

    // Substrings of a segment do not count.
    CHECK(heuristic_classify(make_finding("contest/crypto.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Production);
    CHECK(heuristic_classify(make_finding("src/testing/crypto.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Production);
    CHECK(heuristic_classify(make_finding("latest/crypto.py", 1, AlgorithmClass::Md5))
              .context == ContextLabel::Production);
}

TEST_CASE("heuristic_classify spots safe variants near the match") {
    const Classification pqc = heuristic_classify(
        make_finding("src/kex.py", 3, AlgorithmClass::Rsa, "hybrid ml-kem + rsa mode"));
    CHECK(pqc.context == ContextLabel::Safe);
    CHECK(pqc.severity == Severity::Low);
    CHECK(pqc.confidence == 0.7);

    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Ecdsa,
                                          "migrating to ML_DSA signatures"))
              .context == ContextLabel::Safe);
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Md5,
                                          "md5 kept for etags, sha256 elsewhere"))
              .context == ContextLabel::Safe);
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Sha1,
                                          "replaced by sha3 in v2"))
              .context == ContextLabel::Safe);
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Aes128,
                                          "falls back from aes-256"))
              .context == ContextLabel::Safe);

    // The wrong family's safe token does not neutralize a finding.
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Rsa,
                                          "uses sha256 internally"))
              .context == ContextLabel::Production);
    // sha384 must not read as sha3.
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Md5,
                                          "sha384 unrelated"))
              .context == ContextLabel::Safe);
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Md5,
                                          "sha31 is not a thing"))
              .context == ContextLabel::Production);
    // Hardcoded keys have no safe variant.
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::HardcodedKey,
                                          "ml-kem aes-256 sha256"))
              .context == ContextLabel::Production);
    // Test paths win over safe tokens.
    CHECK(heuristic_classify(make_finding("tests/x.py", 1, AlgorithmClass::Rsa,
                                          "ml-kem"))
              .context == ContextLabel::Test);
}

TEST_CASE("heuristic_classify defaults to production with class severity") {
    const Classification prod =
        heuristic_classify(make_finding("src/auth.py", 9, AlgorithmClass::Rsa));
    CHECK(prod.context == ContextLabel::Production);
    CHECK(prod.severity == Severity::Critical);
    CHECK(prod.confidence == 0.8);

    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Aes128))
              .severity == Severity::Medium);
    CHECK(heuristic_classify(make_finding("src/x.py", 1, AlgorithmClass::Rc4))
              .severity == Severity::High);
}

TEST_CASE("enum names round-trip") {
    CHECK(to_string(ContextLabel::Production) == "production");
    CHECK(to_string(ContextLabel::Test) == "test");
    CHECK(to_string(ContextLabel::Safe) == "safe");
    CHECK(context_label_from_string("safe") == ContextLabel::Safe);
    CHECK_FALSE(context_label_from_string("prod").has_value());

    CHECK(to_string(Severity::Critical) == "critical");
    CHECK(to_string(Severity::High) == "high");
    CHECK(to_string(Severity::Medium) == "medium");
    CHECK(to_string(Severity::Low) == "low");
    CHECK(severity_from_string("medium") == Severity::Medium);
    CHECK_FALSE(severity_from_string("MEDIUM").has_value());

    CHECK(to_string(EnrichmentSource::Remote) == "REMOTE");
    CHECK(to_string(EnrichmentSource::Heuristic) == "HEURISTIC");
    CHECK(to_string(EnrichmentSource::RegexFallback) == "REGEX_FALLBACK");

    CHECK(to_string(EnrichmentBackend::Off) == "off");
    CHECK(to_string(EnrichmentBackend::Heuristic) == "heuristic");
    CHECK(to_string(EnrichmentBackend::Remote) == "remote");
    CHECK(enrichment_backend_from_string("remote") == EnrichmentBackend::Remote);
    CHECK_FALSE(enrichment_backend_from_string("http").has_value());
}

TEST_CASE("next_backoff doubles, saturates and applies jitter") {
    BackoffPolicy policy;  // base 2s, cap 64s, jitter 0.10, 8 attempts

    SUBCASE("zero-jitter sequence") {
        const double expected[] = {2, 4, 8, 16, 32, 64, 64};
        for (int attempt = 1; attempt <= 7; ++attempt) {
            CHECK(next_backoff(attempt, policy, 0.0) == expected[attempt - 1]);
        }
    }
    SUBCASE("jitter draws scale the nominal delay by up to ten percent") {
        CHECK(next_backoff(1, policy, 1.0) == doctest::Approx(2.2).epsilon(1e-12));
        CHECK(next_backoff(1, policy, -1.0) == doctest::Approx(1.8).epsilon(1e-12));
        CHECK(next_backoff(6, policy, 1.0) == doctest::Approx(70.4).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(next_backoff(0, policy, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(next_backoff(-3, policy, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(next_backoff(1, policy, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(next_backoff(1, policy, -1.5), std::invalid_argument);
        CHECK_THROWS_AS(next_backoff(9, policy, 0.0), BackoffExhausted);
        CHECK_NOTHROW(next_backoff(8, policy, 0.0));
    }
}

TEST_CASE("the off backend pins everything to the regex fallback") {
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Off;
    Enricher enricher(options);

    const std::vector<RawFinding> findings{
        make_finding("tests/a.py", 1, AlgorithmClass::Rsa),
        make_finding("src/b.py", 2, AlgorithmClass::Aes128),
    };
    const auto enriched = enricher.enrich_all(findings);
    REQUIRE(enriched.size() == 2);
    for (const auto& e : enriched) {
        CHECK(e.source == EnrichmentSource::RegexFallback);
        CHECK(e.context == ContextLabel::Production);
        CHECK(e.confidence == 0.5);
    }
    CHECK(enriched[0].severity == Severity::Critical);
    CHECK(enriched[1].severity == Severity::Medium);
    CHECK(enricher.counters().regex_fallback == 2);
    CHECK(enricher.counters().remote_ok == 0);
    CHECK(enricher.counters().heuristic_used == 0);
}

TEST_CASE("the heuristic backend applies the pure classifier") {
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Heuristic;
    Enricher enricher(options);

    const std::vector<RawFinding> findings{
        make_finding("tests/a.py", 1, AlgorithmClass::Rsa),
        make_finding("src/b.py", 2, AlgorithmClass::Aes128),
    };
    const auto enriched = enricher.enrich_all(findings);
    REQUIRE(enriched.size() == 2);
    CHECK(enriched[0].context == ContextLabel::Test);
    CHECK(enriched[0].source == EnrichmentSource::Heuristic);
    CHECK(enriched[1].context == ContextLabel::Production);
    CHECK(enricher.counters().heuristic_used == 2);

    // Output order always mirrors input order.
    CHECK(enriched[0].finding == findings[0]);
    CHECK(enriched[1].finding == findings[1]);
}

TEST_CASE("the remote backend trusts healthy responses and clamps confidence") {
    FakeRemote remote;
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Remote;
    options.concurrency = 1;
    Enricher enricher(options, &remote);

    const auto low = make_finding("src/a.py", 1, AlgorithmClass::Rsa);
    const auto high = make_finding("src/a.py", 2, AlgorithmClass::Rsa);
    remote.script(low.id, {ok_result(ContextLabel::Safe, Severity::Low, 0.2)});
    remote.script(high.id, {ok_result(ContextLabel::Production, Severity::Critical, 0.95)});

    const auto enriched = enricher.enrich_all({low, high});
    REQUIRE(enriched.size() == 2);
    CHECK(enriched[0].source == EnrichmentSource::Remote);
    CHECK(enriched[0].context == ContextLabel::Safe);
    CHECK(enriched[0].confidence == 0.7);  // clamped up to the trust floor
    CHECK(enriched[1].confidence == 0.95);
    CHECK(enricher.counters().remote_ok == 2);
    CHECK(enricher.counters().confidence_clamped == 1);
    CHECK(enricher.counters().retries == 0);
}

TEST_CASE("a malformed response downgrades only that finding to the heuristic") {
    FakeRemote remote;
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Remote;
    options.concurrency = 1;
    Enricher enricher(options, &remote);

    const auto bad = make_finding("src/a.py", 1, AlgorithmClass::Rsa);
    const auto good = make_finding("src/a.py", 2, AlgorithmClass::Aes128);
    remote.script(bad.id, {status_result(RemoteStatus::Malformed)});

    const auto enriched = enricher.enrich_all({bad, good});
    REQUIRE(enriched.size() == 2);
    CHECK(enriched[0].source == EnrichmentSource::Heuristic);
    CHECK(enriched[0].context == ContextLabel::Production);
    CHECK(enriched[0].confidence == 0.8);
    CHECK(enriched[1].source == EnrichmentSource::Remote);
    CHECK(enricher.counters().malformed_responses == 1);
    CHECK(enricher.counters().heuristic_used == 1);
    CHECK(enricher.counters().remote_ok == 1);
    // No retry happens for malformed bodies.
    CHECK(remote.call_count(bad.id) == 1);
}

TEST_CASE("rate-limit exhaustion degrades the rest of the file only") {
    FakeRemote remote;
    SleepRecorder sleeps;
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Remote;
    options.concurrency = 1;
    options.backoff.max_attempts = 3;
    options.backoff.jitter_fraction = 0.0;
    Enricher enricher(options, &remote, sleeps.sleeper());

    const auto a1 = make_finding("src/a.py", 1, AlgorithmClass::Rsa);
    const auto a2 = make_finding("src/a.py", 2, AlgorithmClass::Aes128);
    const auto b1 = make_finding("src/b.py", 1, AlgorithmClass::Md5);
    remote.script(a1.id, {status_result(RemoteStatus::RateLimited),
                          status_result(RemoteStatus::RateLimited),
                          status_result(RemoteStatus::RateLimited)});

    const auto enriched = enricher.enrich_all({a1, a2, b1});
    REQUIRE(enriched.size() == 3);
    CHECK(enriched[0].source == EnrichmentSource::RegexFallback);
    CHECK(enriched[1].source == EnrichmentSource::RegexFallback);
    CHECK(enriched[2].source == EnrichmentSource::Remote);

    CHECK(remote.call_count(a1.id) == 3);
    CHECK(remote.call_count(a2.id) == 0);  // never attempted after exhaustion
    CHECK(remote.call_count(b1.id) == 1);

    CHECK(enricher.counters().exhaustions == 1);
    CHECK(enricher.counters().retries == 2);
    CHECK(enricher.counters().regex_fallback == 2);
    CHECK(enricher.counters().remote_ok == 1);
    CHECK(sleeps.sleeps() == std::vector<double>{2.0, 4.0});
}

TEST_CASE("transient network errors retry and then succeed") {
    FakeRemote remote;
    SleepRecorder sleeps;
    EnrichmentOptions options;
    options.backend = EnrichmentBackend::Remote;
    options.concurrency = 1;
    Enricher enricher(options, &remote, sleeps.sleeper());

    const auto flaky = make_finding("src/a.py", 1, AlgorithmClass::Rsa);
    remote.script(flaky.id, {status_result(RemoteStatus::NetworkError),
                             ok_result(ContextLabel::Production, Severity::Critical, 0.9)});

    const auto enriched = enricher.enrich_all({flaky});
    REQUIRE(enriched.size() == 1);
    CHECK(enriched[0].source == EnrichmentSource::Remote);
    CHECK(enricher.counters().retries == 1);
    CHECK(enricher.counters().remote_ok == 1);
    CHECK(enricher.counters().exhaustions == 0);

    // One backoff sleep, nominal 2 s with the default ±10% jitter.
    REQUIRE(sleeps.sleeps().size() == 1);
    CHECK(sleeps.sleeps()[0] >= 1.8);
    CHECK(sleeps.sleeps()[0] <= 2.2);
}

TEST_CASE("remote enrichment is concurrency-independent") {
    const std::vector<RawFinding> findings{
        make_finding("src/a.py", 1, AlgorithmClass::Rsa),
        make_finding("src/a.py", 2, AlgorithmClass::Aes128),
        make_finding("src/b.py", 1, AlgorithmClass::Md5),
        make_finding("src/c.py", 7, AlgorithmClass::Ecdsa),
        make_finding("src/d.py", 9, AlgorithmClass::Rc4),
    };

    const auto run = [&](int concurrency) {
        FakeRemote remote;
        EnrichmentOptions options;
        options.backend = EnrichmentBackend::Remote;
        options.concurrency = concurrency;
        Enricher enricher(options, &remote);
        auto out = enricher.enrich_all(findings);
        return std::pair(out, enricher.counters());
    };

    const auto serial = run(1);
    const auto wide = run(4);
    CHECK(serial.first == wide.first);
    CHECK(serial.second == wide.second);
    for (std::size_t i = 0; i < findings.size(); ++i) {
        CHECK(serial.first[i].finding == findings[i]);
    }
}

TEST_CASE("enricher construction validates its options") {
    EnrichmentOptions remote_without_client;
    remote_without_client.backend = EnrichmentBackend::Remote;
    CHECK_THROWS_AS(Enricher{remote_without_client}, std::invalid_argument);

    EnrichmentOptions bad_concurrency;
    bad_concurrency.concurrency = 0;
    CHECK_THROWS_AS(Enricher{bad_concurrency}, std::invalid_argument);
}

TEST_CASE("parse_remote_response pins the wire contract") {
    const auto parsed = parse_remote_response(
        R"({"context":"test","severity":"low","confidence":0.85})");
    CHECK(parsed.status == RemoteStatus::Ok);
    CHECK(parsed.classification.context == ContextLabel::Test);
    CHECK(parsed.classification.severity == Severity::Low);
    CHECK(parsed.classification.confidence == 0.85);

    // Low-but-valid confidence passes through; clamping is the enricher's job.
    CHECK(parse_remote_response(
              R"({"context":"safe","severity":"low","confidence":0.1})")
              .classification.confidence == 0.1);

    const char* malformed[] = {
        "not json at all",
        "[1,2,3]",
        R"({"context":"production","severity":"high"})",
        R"({"context":"urgent","severity":"high","confidence":0.9})",
        R"({"context":"production","severity":"serious","confidence":0.9})",
        R"({"context":"production","severity":"high","confidence":1.5})",
        R"({"context":"production","severity":"high","confidence":-0.1})",
        R"({"context":"production","severity":"high","confidence":"high"})",
        R"({"context":17,"severity":"high","confidence":0.9})",
    };
    for (const char* body : malformed) {
        INFO("body: " << body);
        CHECK(parse_remote_response(body).status == RemoteStatus::Malformed);
    }
}

TEST_CASE("remote_request_json carries the finding's identity") {
    const auto finding =
        make_finding("src/auth.py", 42, AlgorithmClass::Ecdsa, "sign here");
    const auto parsed = nlohmann::json::parse(remote_request_json(finding));
    CHECK(parsed.at("finding_id") == finding.id);
    CHECK(parsed.at("repository") == "unit");
    CHECK(parsed.at("file") == "src/auth.py");
    CHECK(parsed.at("line") == 42);
    CHECK(parsed.at("algorithm_class") == "ECDSA");
    CHECK(parsed.at("context_snippet") == "sign here");
}

TEST_CASE("HttpRemoteClassifier speaks HTTP with bearer auth") {
    httplib::Server server;
    std::mutex mutex;
    std::string seen_body;
    std::string seen_auth;
    int respond_with = 200;

    server.Post("/classify", [&](const httplib::Request& req, httplib::Response& res) {
        std::lock_guard lock(mutex);
        seen_body = req.body;
        seen_auth = req.get_header_value("Authorization");
        if (respond_with == 200) {
            res.set_content(
                R"({"context":"test","severity":"low","confidence":0.9})",
                "application/json");
        } else {
            res.status = respond_with;
        }
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread runner([&server] { server.listen_after_bind(); });
    server.wait_until_ready();

    const auto finding = make_finding("src/a.py", 3, AlgorithmClass::Rsa, "ctx");

    SUBCASE("a 200 response is parsed and the request is well-formed") {
        RemoteEndpoint endpoint;
        endpoint.url = "http://127.0.0.1:" + std::to_string(port) + "/classify";
        endpoint.token = "sekrit";
        HttpRemoteClassifier client(endpoint);

        const RemoteResult result = client.classify(finding);
        CHECK(result.status == RemoteStatus::Ok);
        CHECK(result.classification.context == ContextLabel::Test);
        CHECK(result.classification.confidence == 0.9);

        std::lock_guard lock(mutex);
        CHECK(seen_auth == "Bearer sekrit");
        const auto request = nlohmann::json::parse(seen_body);
        CHECK(request.at("finding_id") == finding.id);
        CHECK(request.at("algorithm_class") == "RSA");
    }

    SUBCASE("no token means no Authorization header") {
        RemoteEndpoint endpoint;
        endpoint.url = "http://127.0.0.1:" + std::to_string(port) + "/classify";
        HttpRemoteClassifier client(endpoint);
        CHECK(client.classify(finding).status == RemoteStatus::Ok);
        std::lock_guard lock(mutex);
        CHECK(seen_auth.empty());
    }

    SUBCASE("429 maps to RateLimited") {
        {
            std::lock_guard lock(mutex);
            respond_with = 429;
        }
        RemoteEndpoint endpoint;
        endpoint.url = "http://127.0.0.1:" + std::to_string(port) + "/classify";
        HttpRemoteClassifier client(endpoint);
        CHECK(client.classify(finding).status == RemoteStatus::RateLimited);
    }

    SUBCASE("other HTTP errors map to NetworkError") {
        {
            std::lock_guard lock(mutex);
            respond_with = 503;
        }
        RemoteEndpoint endpoint;
        endpoint.url = "http://127.0.0.1:" + std::to_string(port) + "/classify";
        HttpRemoteClassifier client(endpoint);
        CHECK(client.classify(finding).status == RemoteStatus::NetworkError);
    }

    server.stop();
    runner.join();
}

TEST_CASE("an unreachable endpoint reports NetworkError") {
    RemoteEndpoint endpoint;
    endpoint.url = "http://127.0.0.1:9/classify";  // discard port: nothing listens
    endpoint.timeout_seconds = 1.0;
    HttpRemoteClassifier client(endpoint);
    const auto finding = make_finding("src/a.py", 3, AlgorithmClass::Rsa);
    const RemoteResult result = client.classify(finding);
    CHECK(result.status == RemoteStatus::NetworkError);
    CHECK_FALSE(result.detail.empty());
}
