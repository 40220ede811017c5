#include <doctest.h>

#include "combench/parse.hpp"
#include "parse_corpus.hpp"

using namespace combench;
using namespace combench::testing;

TEST_CASE("the 30-case cascade corpus parses with zero deviations") {
  auto corpus = parse_corpus();
  CHECK(corpus.size() == 30);
  for (const auto& c : corpus) {
    CAPTURE(c.name);
    auto out = parse_response(c.text);
    if (c.expect_stage == 0) {
      CHECK(!out.ok);
      continue;
    }
    REQUIRE(out.ok);
    CHECK(out.stage == c.expect_stage);
    CHECK(out.submission.satisfiable == *c.expect_sat);
    if (c.expect_solution) {
      REQUIRE(out.submission.solution.has_value());
      CHECK(*out.submission.solution == *c.expect_solution);
    } else {
      CHECK(!out.submission.solution.has_value());
    }
  }
}

TEST_CASE("reasoning text is carried through but never graded") {
  auto out = parse_response(R"({"satisfiable": true, "solution": [1], "reasoning": "because"})");
  REQUIRE(out.ok);
  CHECK(out.submission.reasoning == "because");
}

TEST_CASE("stage order: a strict parse wins even when fenced blocks exist") {
  // the whole text IS the object; stage 1 must claim it before stage 2 runs
  std::string text = R"({"satisfiable": true, "solution": [1], "reasoning": "has ``` inside"})";
  auto out = parse_response(text);
  REQUIRE(out.ok);
  CHECK(out.stage == 1);
}

TEST_CASE("cascade order: fenced beats brace extraction") {
  std::string text =
      "loose {\"satisfiable\": false} text\n"
      "```json\n{\"satisfiable\": true, \"solution\": [5]}\n```\n";
  auto out = parse_response(text);
  REQUIRE(out.ok);
  CHECK(out.stage == 2);
  CHECK(out.submission.satisfiable == true);
}
