#include <doctest.h>

#include "pqcaudit/util.hpp"

#include <string>
#include <vector>

using namespace pqcaudit;

TEST_CASE("fnv1a64 matches the published reference vectors") {
    // Reference values from the FNV specification's test suite.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("fnv1a64 chains through the seed parameter") {
    CHECK(fnv1a64("bc", fnv1a64("a")) == fnv1a64("abc"));
    CHECK(fnv1a64("", fnv1a64("abc")) == fnv1a64("abc"));
    CHECK(fnv1a64("abc", fnv1a64("")) == fnv1a64("abc"));
}

TEST_CASE("fnv1a64 is usable in constant expressions") {
    static_assert(fnv1a64("") == 0xcbf29ce484222325ull);
    static_assert(fnv1a64("a") != fnv1a64("b"));
    CHECK(true);
}

TEST_CASE("to_hex renders 16 lowercase hex digits") {
    CHECK(to_hex(0) == "0000000000000000");
    CHECK(to_hex(0xdeadbeefull) == "00000000deadbeef");
    CHECK(to_hex(0xffffffffffffffffull) == "ffffffffffffffff");
    CHECK(to_hex(fnv1a64("a")) == "af63dc4c8601ec8c");
}

TEST_CASE("lower_copy folds ASCII only") {
    CHECK(lower_copy("AbC-123_XY") == "abc-123_xy");
    CHECK(lower_copy("") == "");
    CHECK(lower_copy("already lower") == "already lower");
}

TEST_CASE("trim_copy strips surrounding whitespace") {
    CHECK(trim_copy("  x  ") == "x");
    CHECK(trim_copy("\t a b \r\n") == "a b");
    CHECK(trim_copy("") == "");
    CHECK(trim_copy("   ") == "");
    CHECK(trim_copy("solid") == "solid");
}

TEST_CASE("split_lines handles LF, CRLF and missing terminators") {
    CHECK(split_lines("") == std::vector<std::string>{});
    CHECK(split_lines("a") == std::vector<std::string>{"a"});
    CHECK(split_lines("a\n") == std::vector<std::string>{"a"});
    CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\n\nb") == std::vector<std::string>{"a", "", "b"});
    CHECK(split_lines("\n") == std::vector<std::string>{""});
}
