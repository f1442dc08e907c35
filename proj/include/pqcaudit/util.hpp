#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pqcaudit {

// 64-bit FNV-1a. Used for finding ids, config fingerprints and per-stratum
// sampling seeds; stable across platforms, unlike std::hash.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (char ch : data) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

std::string lower_copy(std::string_view s);

std::string trim_copy(std::string_view s);

// Splits on '\n'; a trailing '\r' on each line is dropped so CRLF input
// behaves like LF input. The final line is kept even when not terminated.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace pqcaudit
