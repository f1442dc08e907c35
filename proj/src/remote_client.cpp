#include "pqcaudit/remote_client.hpp"

#include <cmath>
#include <stdexcept>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace pqcaudit {

namespace {

// Splits "scheme://host[:port]/path" into client base and request path;
// httplib's Client constructor accepts the scheme://host[:port] form.
void split_url(const std::string& url, std::string& scheme_host, std::string& path) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw std::invalid_argument("remote url must start with http:// or https://: " + url);
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host = url;
        path = "/";
    } else {
        scheme_host = url.substr(0, path_start);
        path = url.substr(path_start);
    }
}

}  // namespace

std::string remote_request_json(const RawFinding& finding) {
    const nlohmann::json body{
        {"finding_id", finding.id},
        {"repository", finding.repo},
        {"file", finding.file},
        {"line", finding.line},
        {"algorithm_class", std::string(to_string(finding.algorithm))},
        {"context_snippet", finding.context_snippet},
    };
    return body.dump();
}

RemoteResult parse_remote_response(const std::string& body) {
    nlohmann::json parsed = nlohmann::json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        return {RemoteStatus::Malformed, {}, "response is not a JSON object"};
    }
    if (!parsed.contains("context") || !parsed["context"].is_string() ||
        !parsed.contains("severity") || !parsed["severity"].is_string() ||
        !parsed.contains("confidence") || !parsed["confidence"].is_number()) {
        return {RemoteStatus::Malformed, {}, "missing context/severity/confidence"};
    }

    const auto context = context_label_from_string(parsed["context"].get<std::string>());
    const auto severity = severity_from_string(parsed["severity"].get<std::string>());
    const double confidence = parsed["confidence"].get<double>();
    if (!context || !severity || !std::isfinite(confidence) || confidence < 0.0 ||
        confidence > 1.0) {
        return {RemoteStatus::Malformed, {}, "out-of-range classification fields"};
    }

    RemoteResult result;
    result.status = RemoteStatus::Ok;
    result.classification = {*context, *severity, confidence};
    return result;
}

HttpRemoteClassifier::HttpRemoteClassifier(RemoteEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
    split_url(endpoint_.url, scheme_host_, path_);
}

RemoteResult HttpRemoteClassifier::classify(const RawFinding& finding) {
    // One client per call: httplib clients are not thread-safe and the
    // enricher fans file groups out across threads.
    httplib::Client client(scheme_host_);
    const auto timeout = std::chrono::duration<double>(endpoint_.timeout_seconds);
    client.set_connection_timeout(
        std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));

    httplib::Headers headers;
    if (!endpoint_.token.empty()) {
        headers.emplace("Authorization", "Bearer " + endpoint_.token);
    }

    const httplib::Result response =
        client.Post(path_, headers, remote_request_json(finding), "application/json");
    if (!response) {
        return {RemoteStatus::NetworkError, {}, httplib::to_string(response.error())};
    }
    if (response->status == 429) {
        return {RemoteStatus::RateLimited, {}, "rate limited"};
    }
    if (response->status != 200) {
        return {RemoteStatus::NetworkError, {}, "http status " + std::to_string(response->status)};
    }
    return parse_remote_response(response->body);
}

}  // namespace pqcaudit
