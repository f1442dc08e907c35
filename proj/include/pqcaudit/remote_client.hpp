#pragma once

#include <string>

#include "pqcaudit/enrichment.hpp"

namespace pqcaudit {

struct RemoteEndpoint {
    std::string url;    // http:// or https://, e.g. http://127.0.0.1:8080/classify
    std::string token;  // bearer credential; never logged or fingerprinted
    double timeout_seconds = 10.0;

    bool operator==(const RemoteEndpoint&) const = default;
};

// Request/response JSON helpers, exposed so tests can pin the wire contract.
// Request:  {finding_id, repository, file, line, algorithm_class, context_snippet}
// Response: {context, severity, confidence}
std::string remote_request_json(const RawFinding& finding);

// Parses a response body; returns Malformed for missing/invalid fields or
// confidence outside [0, 1]. Clamping low-but-valid confidences is the
// enricher's job, not the parser's.
RemoteResult parse_remote_response(const std::string& body);

// RemoteClassifier speaking HTTP(S) to a classification endpoint.
// Status mapping: 200 => parse body; 429 => RateLimited; anything else,
// including transport failures and timeouts => NetworkError.
class HttpRemoteClassifier : public RemoteClassifier {
public:
    explicit HttpRemoteClassifier(RemoteEndpoint endpoint);

    RemoteResult classify(const RawFinding& finding) override;

private:
    RemoteEndpoint endpoint_;
    std::string scheme_host_;  // scheme://host[:port]
    std::string path_;
};

}  // namespace pqcaudit
