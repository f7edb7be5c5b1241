#include "doctest.h"
#include "fsc/apply.hpp"
#include "fsc/regex.hpp"
#include "helpers.hpp"

using namespace fsc;
using testutil::outs;
using testutil::rx;
using testutil::strset;

TEST_CASE("tokenization is greedy longest match over sigma") {
  Environment env;
  Network n = rx("\"ab\" | a b c | x");
  // sigma is {a, b, c, x}: single characters
  auto toks = tokenize("abc", n);
  CHECK(toks.size() == 3);

  Network m = rx("Tag a | b");
  auto t2 = tokenize("Taga", m);
  REQUIRE(t2.size() == 2);
  CHECK(symbol_name(t2[0]) == "Tag");
  CHECK(symbol_name(t2[1]) == "a");
  // longest match wins even with overlapping names
  Network k = rx("ab | a b");  // symbols "ab", "a", "b"
  auto t3 = tokenize("ab", k);
  REQUIRE(t3.size() == 1);
  CHECK(symbol_name(t3[0]) == "ab");
}

TEST_CASE("unmatchable characters raise a tokenization error") {
  Network n = rx("a b");
  CHECK_THROWS_AS(tokenize("a b", n), TokenizationError);
}

TEST_CASE("unknown characters fall back to fresh symbols") {
  Network n = rx("? ?");
  CHECK(outs(n, "zq") == strset({"zq"}));
}

TEST_CASE("enumeration is shortest first") {
  Network n = rx("a | a a | a a a");
  ApplyResult r = enumerate_strings(n, 10);
  REQUIRE(r.outputs.size() == 3);
  CHECK(r.outputs[0] == "a");
  CHECK(r.outputs[1] == "aa");
  CHECK(r.outputs[2] == "aaa");
  CHECK_FALSE(r.truncated);
}

TEST_CASE("limit truncates infinite languages") {
  Network n = rx("a*");
  ApplyResult r = enumerate_strings(n, 5);
  CHECK(r.outputs.size() == 5);
  CHECK(r.truncated);
  // exact exhaustion is not flagged as truncation
  Network f = rx("a | b | c");
  ApplyResult r2 = enumerate_strings(f, 3);
  CHECK(r2.outputs.size() == 3);
  CHECK_FALSE(r2.truncated);
}

TEST_CASE("apply down and up traverse the two sides") {
  Network n = rx("[a:x | b:y]+");
  CHECK(outs(n, "ab", ApplyDir::Down) == strset({"xy"}));
  CHECK(outs(n, "xy", ApplyDir::Up) == strset({"ab"}));
  CHECK(outs(n, "ab", ApplyDir::Up).empty());
}

TEST_CASE("apply handles epsilon outputs and inputs") {
  Network n = rx("a:0 b");
  CHECK(outs(n, "ab", ApplyDir::Down) == strset({"b"}));
  CHECK(outs(n, "b", ApplyDir::Up) == strset({"ab"}));
}

TEST_CASE("word enumeration on each side") {
  Network n = rx("a:x [b:y | c]");
  ApplyResult up = enumerate_words(n, Side::Upper, 10);
  ApplyResult low = enumerate_words(n, Side::Lower, 10);
  CHECK(std::set<std::string>(up.outputs.begin(), up.outputs.end()) == strset({"ab", "ac"}));
  CHECK(std::set<std::string>(low.outputs.begin(), low.outputs.end()) == strset({"xy", "xc"}));
}

TEST_CASE("pair enumeration lists upper and lower separated by a tab") {
  CHECK(testutil::pairs(rx("a:x | b")) ==
        std::set<std::pair<std::string, std::string>>{{"a", "x"}, {"b", "b"}});
}

TEST_CASE("default limit applies") {
  Network n = rx("a*");
  ApplyResult r = enumerate_strings(n);
  CHECK(r.outputs.size() == kDefaultLimit);
  CHECK(r.truncated);
}
