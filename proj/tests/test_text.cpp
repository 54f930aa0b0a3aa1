#include <doctest.h>

#include "streetpoll/text.hpp"

#include <cstdio>
#include <filesystem>

using namespace streetpoll;

TEST_CASE("trim strips ascii whitespace from both ends") {
    CHECK(trim("  hello ") == "hello");
    CHECK(trim("\t a b \r\n") == "a b");
    CHECK(trim("") == "");
    CHECK(trim("   ") == "");
    CHECK(trim("x") == "x");
}

TEST_CASE("fold lowercases ascii only, leaving multibyte intact") {
    CHECK(fold("ABC def") == "abc def");
    CHECK(fold("Erdoğan") == "erdoğan");
    // Turkish dotted capital İ is multibyte and must pass through
    CHECK(fold("İnce") == "İnce");
}

TEST_CASE("split on a delimiter keeps empty fields") {
    CHECK(split("a,b,c", ',') == std::vector<std::string>{"a", "b", "c"});
    CHECK(split("a,,c", ',') == std::vector<std::string>{"a", "", "c"});
    CHECK(split("", ',') == std::vector<std::string>{""});
    CHECK(split("a,", ',') == std::vector<std::string>{"a", ""});
}

TEST_CASE("split_lines handles crlf and missing trailing newline") {
    CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\n\nb\n") == std::vector<std::string>{"a", "", "b"});
    CHECK(split_lines("").empty());
}

TEST_CASE("parse_int accepts signed decimals and rejects junk") {
    CHECK(parse_int("42") == 42);
    CHECK(parse_int(" -7 ") == -7);
    CHECK(parse_int("+3") == 3);
    CHECK(parse_int("0") == 0);
    CHECK(!parse_int(""));
    CHECK(!parse_int("4x"));
    CHECK(!parse_int("-"));
    CHECK(!parse_int("1.5"));
}

TEST_CASE("starts_with_ci ignores ascii case") {
    CHECK(starts_with_ci("Answer 1: 30", "answer 1"));
    CHECK(starts_with_ci("ANSWER", "answer"));
    CHECK(!starts_with_ci("answe", "answer"));
    CHECK(!starts_with_ci("banswer", "answer"));
}

TEST_CASE("fnv1a matches the published 64-bit test vectors") {
    // offset basis / single-byte vectors from the FNV reference code
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
    CHECK(fnv1a("x", fnv1a("y")) != fnv1a("y", fnv1a("x")));
}

TEST_CASE("to_hex is zero-padded to sixteen digits") {
    CHECK(to_hex(0) == "0000000000000000");
    CHECK(to_hex(0xdeadbeefull) == "00000000deadbeef");
    CHECK(to_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("percent_round rounds half up") {
    CHECK(percent_round(0.0) == 0);
    CHECK(percent_round(0.125) == 13);
    CHECK(percent_round(0.845) == 85);  // 84.5 -> 85
    CHECK(percent_round(0.2333) == 23);
    CHECK(percent_round(1.0) == 100);
}

TEST_CASE("format_fixed rounds half up at the given precision") {
    CHECK(format_fixed(0.125, 2) == "0.13");
    CHECK(format_fixed(1.0 / 3.0, 2) == "0.33");
    CHECK(format_fixed(16.0 / 18.0, 2) == "0.89");
    CHECK(format_fixed(16.0 / 30.0, 2) == "0.53");
    CHECK(format_fixed(313.0 / 322.0, 2) == "0.97");
    CHECK(format_fixed(313.0 / 325.0, 2) == "0.96");
    CHECK(format_fixed(1.0, 2) == "1.00");
    CHECK(format_fixed(0.5, 0) == "1");
}

TEST_CASE("file round trip and open failure") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "streetpoll_text_test.txt";
    write_file(path.string(), "satır bir\nline two\n");
    CHECK(read_file(path.string()) == "satır bir\nline two\n");
    fs::remove(path);
    CHECK_THROWS_AS(read_file(path.string()), std::runtime_error);
}
