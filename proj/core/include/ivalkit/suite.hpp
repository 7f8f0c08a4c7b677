// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivalkit/hexfloat.hpp"
#include "ivalkit/interval.hpp"

namespace ivalkit {

// One "type"-tagged value from a suite file. Endpoint and val strings are
// kept verbatim so a case can be re-emitted or diagnosed even when parsing
// failed; the typed views are filled in when parsing succeeded at the case's
// format. `inexact` records that outward rounding moved an endpoint.
struct TestValue {
  enum class Kind { interval, number, boolean, string };

  Kind kind = Kind::interval;

  // kind == interval
  std::string inf_text, sup_text;
  std::optional<std::string> dec_text;
  std::optional<DecoratedInterval> parsed;

  // other kinds ("val" field); booleans also set `boolean`
  std::string val_text;
  std::optional<BigFloat> number;
  bool boolean = false;

  bool inexact = false;
  std::optional<std::string> parse_issue;  // why `parsed`/`number` is absent
};

// One test case. `format` is wide(precision) unless format_hint selects an
// IEEE preset; values are parsed against it at load time.
struct TestCase {
  std::string function_text;
  std::optional<FunctionId> function;
  int precision = 53;
  std::optional<std::string> format_hint;
  Format format = Format::binary64();
  std::vector<TestValue> input;
  TestValue tight;
  std::optional<TestValue> accurate;
  std::optional<std::string> comment;
};

struct TestSuite {
  std::string source_name;
  std::vector<TestCase> cases;
};

struct Issue {
  bool fatal = false;
  std::string message;
};

// Reads a suite from UTF-8 JSON: an array of case objects, or one object.
// Strict JSON only. Malformed JSON throws ParseError carrying the byte
// offset, with line/column in the message; structural schema violations
// throw SchemaError naming the field and case index. Value-level problems
// (bad endpoints, unknown decorations) are recorded on the TestValue for
// validate_case, not thrown.
TestSuite load_suite(const std::string& path);
TestSuite load_suite_text(std::string_view json_text, std::string source_name);

// Per-case issues: unknown function names warn (recommended operations may
// legitimately be unimplemented); unparseable values, reversed or invalid
// bounds, tight not contained in accurate, and (under require_exact) values
// that moved under outward rounding are fatal.
std::vector<Issue> validate_case(
    const TestCase& c, ParsePolicy policy = ParsePolicy::round_in_direction);

// Canonical serialization: 2-space indent, fields ordered function,
// precision, format_hint, input, output, comment; parsed endpoints re-emit
// through format_hex (so decimal input endpoints come back as the hex values
// actually tested). Loading the output reproduces the suite value-for-value.
std::string suite_to_json(const TestSuite& s);
void save_suite(const TestSuite& s, const std::string& path);

// The empty set serializes as the reversed-infinity pair inf="inf",
// sup="-inf" (plus dec "ill" for NaI); these helpers centralize the rule.
TestValue value_from_decorated(const DecoratedInterval& d);
TestValue value_from_interval(const Interval& x);

// One value object by itself, in the same encoding suites use. These back
// the subprocess wire protocol so both sides share a single codec.
// parse_value_json throws ParseError/SchemaError on malformed text.
TestValue parse_value_json(std::string_view json_object_text, const Format& fmt);
std::string value_to_json_text(const TestValue& v);

}  // namespace ivalkit
