// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/suite.hpp"

#include <algorithm>
#include <string>

#include "doctest.h"
#include "ivalkit/errors.hpp"
#include "support.hpp"

using namespace ivalkit;
using testkit::bf;

namespace {

const Format b64 = Format::binary64();

const char* kAtanhCase = R"({
  "function": "atanh",
  "precision": 23,
  "input": [{"type": "interval", "inf": "-0xf.fe1e00@-1", "sup": "0xf.fe1e00@-1", "dec": "com"}],
  "output": {
    "tight":    {"type": "interval", "inf": "-0x4.305fa0@0", "sup": "0x4.305fa0@0", "dec": "com"},
    "accurate": {"type": "interval", "inf": "-0x4.306830@0", "sup": "0x4.306830@0", "dec": "com"}
  }
})";

bool has_fatal(const std::vector<Issue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.fatal; });
}

}  // namespace

TEST_SUITE_BEGIN("suite");

TEST_CASE("a single object loads as a one-case suite") {
  const TestSuite s = load_suite_text(kAtanhCase, "inline");
  REQUIRE(s.cases.size() == 1);
  const TestCase& c = s.cases[0];
  CHECK(c.function == FunctionId::atanh);
  CHECK(c.precision == 23);
  CHECK(c.format == Format::wide(23));
  REQUIRE(c.input.size() == 1);
  REQUIRE(c.input[0].parsed.has_value());
  CHECK(c.input[0].parsed->dec == Decoration::com);
  REQUIRE(c.tight.parsed.has_value());
  CHECK(c.tight.parsed->interval.sup() ==
        bf("0x4.305fa@0", Format::wide(23), RoundingDirection::down));
  REQUIRE(c.accurate.has_value());
  CHECK_FALSE(has_fatal(validate_case(c)));
  CHECK(subset(c.tight.parsed->interval, c.accurate->parsed->interval));
}

TEST_CASE("schema violations name the field") {
  CHECK_THROWS_WITH_AS(load_suite_text(R"({"precision": 53})", "t"),
                       doctest::Contains("function required"), SchemaError);
  CHECK_THROWS_WITH_AS(load_suite_text(R"({"function": "exp"})", "t"),
                       doctest::Contains("precision required"), SchemaError);
  CHECK_THROWS_WITH_AS(
      load_suite_text(
          R"({"function": "exp", "precision": 1, "input": [], "output": {}})", "t"),
      doctest::Contains("precision out of range"), SchemaError);
  CHECK_THROWS_WITH_AS(
      load_suite_text(
          R"({"function": "exp", "precision": 53, "input": [], "output": {}})", "t"),
      doctest::Contains("output.tight required"), SchemaError);
  CHECK_THROWS_WITH_AS(
      load_suite_text(R"({"function": "exp", "precision": 53, "input": 3,
                          "output": {"tight": {"type": "boolean", "val": true}}})",
                      "t"),
      doctest::Contains("input required"), SchemaError);
  CHECK_THROWS_WITH_AS(
      load_suite_text(
          R"({"function": "exp", "precision": 53, "format_hint": "binary128",
              "input": [], "output": {"tight": {"type": "boolean", "val": true}}})",
          "t"),
      doctest::Contains("format_hint"), SchemaError);

  // accurate makes sense only next to an interval tight value
  CHECK_THROWS_WITH_AS(
      load_suite_text(
          R"({"function": "exp", "precision": 53, "input": [],
              "output": {"tight": {"type": "boolean", "val": true},
                         "accurate": {"type": "interval", "inf": "0x1@0", "sup": "0x1@0"}}})",
          "t"),
      doctest::Contains("accurate requires an interval"), SchemaError);
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    load_suite_text("[\n  {\"function\" \"exp\"}\n]", "t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("unknown fields are tolerated, unknown functions warn") {
  const char* text = R"({
    "function": "tanh", "precision": 53, "format_hint": "binary64",
    "vendor_notes": {"x": 1},
    "input": [{"type": "interval", "inf": "0x0@0", "sup": "0x1@0"}],
    "output": {"tight": {"type": "interval", "inf": "0x0@0", "sup": "0x1@0"}}
  })";
  const TestSuite s = load_suite_text(text, "t");
  const auto issues = validate_case(s.cases[0]);
  REQUIRE_FALSE(issues.empty());
  CHECK_FALSE(has_fatal(issues));
  CHECK(issues[0].message.find("tanh") != std::string::npos);
}

TEST_CASE("value-level problems are fatal validation issues, not throws") {
  const char* reversed = R"({
    "function": "exp", "precision": 53,
    "input": [{"type": "interval", "inf": "0x2@0", "sup": "0x1@0"}],
    "output": {"tight": {"type": "interval", "inf": "0x1@0", "sup": "0x2@0"}}
  })";
  const TestSuite s = load_suite_text(reversed, "t");
  CHECK_FALSE(s.cases[0].input[0].parsed.has_value());
  CHECK(s.cases[0].input[0].parse_issue.has_value());
  CHECK(has_fatal(validate_case(s.cases[0])));

  const char* bad_dec = R"({
    "function": "exp", "precision": 53,
    "input": [{"type": "interval", "inf": "0x1@0", "sup": "0x2@0", "dec": "bogus"}],
    "output": {"tight": {"type": "interval", "inf": "0x1@0", "sup": "0x2@0"}}
  })";
  CHECK(has_fatal(validate_case(load_suite_text(bad_dec, "t").cases[0])));

  // tight escaping accurate is a lie about the function, always fatal
  const char* escape = R"({
    "function": "exp", "precision": 53,
    "input": [{"type": "interval", "inf": "0x0@0", "sup": "0x1@0"}],
    "output": {
      "tight":    {"type": "interval", "inf": "0x0@0", "sup": "0x4@0"},
      "accurate": {"type": "interval", "inf": "0x1@0", "sup": "0x3@0"}
    }
  })";
  const auto issues = validate_case(load_suite_text(escape, "t").cases[0]);
  CHECK(has_fatal(issues));

  // arity mismatch for a known function
  const char* unary_two = R"({
    "function": "exp", "precision": 53,
    "input": [{"type": "interval", "inf": "0x0@0", "sup": "0x1@0"},
              {"type": "interval", "inf": "0x0@0", "sup": "0x1@0"}],
    "output": {"tight": {"type": "interval", "inf": "0x1@0", "sup": "0x3@0"}}
  })";
  CHECK(has_fatal(validate_case(load_suite_text(unary_two, "t").cases[0])));
}

TEST_CASE("inexact endpoints are fatal only under require_exact") {
  const char* decimal = R"({
    "function": "exp", "precision": 53, "format_hint": "binary64",
    "input": [{"type": "interval", "inf": "0.1", "sup": "0.2"}],
    "output": {"tight": {"type": "interval", "inf": "0x1@0", "sup": "0x2@0"}}
  })";
  const TestCase c = load_suite_text(decimal, "t").cases[0];
  CHECK(c.input[0].inexact);
  CHECK_FALSE(has_fatal(validate_case(c)));
  CHECK(has_fatal(validate_case(c, ParsePolicy::require_exact)));
}

TEST_CASE("empty and NaI serialize as reversed infinities") {
  const TestValue empty = value_from_interval(Interval::empty(b64));
  CHECK(empty.inf_text == "inf");
  CHECK(empty.sup_text == "-inf");

  const TestValue n = value_from_decorated(nai(b64));
  CHECK(n.dec_text == "ill");

  const std::string round = value_to_json_text(n);
  const TestValue back = parse_value_json(round, b64);
  REQUIRE(back.parsed.has_value());
  CHECK(back.parsed->interval.is_empty());
  CHECK(back.parsed->dec == Decoration::ill);
}

TEST_CASE("non-interval kinds carry val verbatim") {
  const char* text = R"([
    {"function": "wid", "precision": 53, "format_hint": "binary64",
     "input": [{"type": "interval", "inf": "0x1@0", "sup": "0x2@0"}],
     "output": {"tight": {"type": "number", "val": "0x1@0"}}},
    {"function": "is-empty", "precision": 53,
     "input": [{"type": "interval", "inf": "inf", "sup": "-inf"}],
     "output": {"tight": {"type": "boolean", "val": false}}},
    {"function": "describe", "precision": 53,
     "input": [{"type": "interval", "inf": "0x1@0", "sup": "0x2@0"}],
     "output": {"tight": {"type": "string", "val": "bounded"}}}
  ])";
  const TestSuite s = load_suite_text(text, "t");
  REQUIRE(s.cases.size() == 3);
  CHECK(s.cases[0].tight.kind == TestValue::Kind::number);
  REQUIRE(s.cases[0].tight.number.has_value());
  CHECK(*s.cases[0].tight.number == bf("1", b64));
  CHECK(s.cases[1].tight.kind == TestValue::Kind::boolean);
  CHECK_FALSE(s.cases[1].tight.boolean);
  CHECK(s.cases[1].input[0].parsed->interval.is_empty());
  CHECK(s.cases[2].tight.val_text == "bounded");
}

TEST_CASE("save then load preserves every value") {
  const TestSuite s = load_suite_text(kAtanhCase, "inline");
  const std::string text1 = suite_to_json(s);
  const TestSuite s2 = load_suite_text(text1, "inline2");
  CHECK(suite_to_json(s2) == text1);

  // Canonical output re-emits parsed endpoints in trimmed hex.
  CHECK(text1.find("0x4.305fa@0") != std::string::npos);
  CHECK(text1.find("0x4.305fa0@0") == std::string::npos);
}

TEST_CASE("the value codec round-trips each kind") {
  for (const char* t : {
           R"({"type": "interval", "inf": "0x1@0", "sup": "0x2@0", "dec": "def"})",
           R"({"type": "number", "val": "-0x1.8@0"})",
           R"({"type": "boolean", "val": true})",
           R"({"type": "string", "val": "whatever"})",
       }) {
    const TestValue v = parse_value_json(t, b64);
    const TestValue back = parse_value_json(value_to_json_text(v), b64);
    CHECK(back.kind == v.kind);
    if (v.kind == TestValue::Kind::interval) {
      CHECK(equal(back.parsed->interval, v.parsed->interval));
      CHECK(back.parsed->dec == v.parsed->dec);
    }
  }
  CHECK_THROWS_AS(parse_value_json("not json", b64), ParseError);
  CHECK_THROWS_AS(parse_value_json(R"({"type": "interval"})", b64), SchemaError);
}

TEST_SUITE_END();
