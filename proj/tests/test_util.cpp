#include <catch_amalgamated.hpp>

#include "rbpd/util.hpp"

using namespace rbpd;

TEST_CASE("string helpers") {
    CHECK(trim("  a b  ") == "a b");
    CHECK(trim("") == "");
    CHECK(lower_ascii("PayPal, Inc.") == "paypal, inc.");
    CHECK(collapse_ws("a   b \t c") == "a b c");
    CHECK(collapse_ws("  x  ") == "x");
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(contains_ci("Total Assets here", "assets"));
    CHECK_FALSE(contains_ci("nothing", "assets"));
}

TEST_CASE("hex round trip") {
    std::vector<uint8_t> bytes{0x00, 0xff, 0x12, 0xab};
    CHECK(to_hex(bytes) == "00ff12ab");
    CHECK(from_hex("00ff12ab") == bytes);
    CHECK_THROWS_AS(from_hex("0g"), std::invalid_argument);
    CHECK_THROWS_AS(from_hex("abc"), std::invalid_argument);
}

TEST_CASE("fnv1a64 stable") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}
