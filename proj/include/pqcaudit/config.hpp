#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pqcaudit {

// Scalar or string-list value from the config file.
using ConfigValue =
    std::variant<bool, long long, double, std::string, std::vector<std::string>>;

// Flat table keyed by dotted path, e.g. "scan.root" or
// "enrichment.backoff.cap_seconds". std::map keeps keys sorted, which the
// config fingerprint relies on.
using ConfigTable = std::map<std::string, ConfigValue>;

// Parses the TOML subset the auditor uses:
//   [section] and [nested.section] headers
//   key = "string" | 12 | 3.5 | true | ["a", "b"]   (also dotted keys)
//   '#' comments, blank lines
// Strings support \" \\ \n \t escapes. Duplicate keys, bare (unquoted) string
// values, and malformed lines raise std::runtime_error naming the line.
ConfigTable parse_config_text(std::string_view text);

// Reads and parses a config file; throws std::runtime_error when unreadable.
ConfigTable load_config_file(const std::filesystem::path& path);

// Canonical single-line rendering used for fingerprinting: booleans as
// true/false, integers in decimal, floats in shortest round-trip form,
// strings and lists quoted with \" and \\ escaped.
std::string render_config_value(const ConfigValue& value);

}  // namespace pqcaudit
