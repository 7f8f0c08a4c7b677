// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/suite.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "ivalkit/errors.hpp"

namespace ivalkit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void syntax_error(std::string_view text, std::size_t byte,
                               const std::string& detail) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError("JSON syntax error at line " + std::to_string(line) +
                       " column " + std::to_string(col) + ": " + detail,
                   byte);
}

std::string scalar_text(const json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

// Endpoint moved under outward rounding iff its two directed parses differ.
bool endpoint_inexact(const std::string& text, const Format& fmt) {
  const BigFloat dn = parse_number(text, fmt, RoundingDirection::down);
  const BigFloat up = parse_number(text, fmt, RoundingDirection::up);
  if (dn.is_nan() || up.is_nan()) return false;
  return !(dn == up);
}

TestValue load_value(const json& j, const Format& fmt,
                     const std::string& where) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw SchemaError(where + ".type required");
  const std::string type = j["type"].get<std::string>();
  TestValue v;

  if (type == "interval") {
    v.kind = TestValue::Kind::interval;
    if (!j.contains("inf") || !j["inf"].is_string())
      throw SchemaError(where + ".inf required");
    if (!j.contains("sup") || !j["sup"].is_string())
      throw SchemaError(where + ".sup required");
    v.inf_text = j["inf"].get<std::string>();
    v.sup_text = j["sup"].get<std::string>();
    if (j.contains("dec")) {
      if (!j["dec"].is_string()) throw SchemaError(where + ".dec must be a string");
      v.dec_text = j["dec"].get<std::string>();
    }

    std::optional<Decoration> dec;
    if (v.dec_text) {
      dec = decoration_from_name(*v.dec_text);
      if (!dec) {
        v.parse_issue = where + ": unknown decoration '" + *v.dec_text + "'";
        return v;
      }
    }
    try {
      // Reversed infinities are the schema's spelling of the empty set.
      Interval bare = (v.inf_text == "inf" && v.sup_text == "-inf")
                          ? Interval::empty(fmt)
                          : construct(v.inf_text, v.sup_text, fmt);
      Decoration inferred =
          bare.is_empty() ? Decoration::trv
          : (bare.inf().is_inf() || bare.sup().is_inf()) ? Decoration::dac
                                                         : Decoration::com;
      v.parsed = decorated(std::move(bare), dec.value_or(inferred));
      if (!v.parsed->interval.is_empty())
        v.inexact = endpoint_inexact(v.inf_text, fmt) ||
                    endpoint_inexact(v.sup_text, fmt);
    } catch (const Error& e) {
      v.parse_issue = where + ": " + e.what();
    }
    return v;
  }

  if (type == "number" || type == "boolean" || type == "string") {
    if (!j.contains("val")) throw SchemaError(where + ".val required");
    const json& val = j["val"];
    if (type == "boolean") {
      v.kind = TestValue::Kind::boolean;
      if (!val.is_boolean()) throw SchemaError(where + ".val must be a boolean");
      v.boolean = val.get<bool>();
      v.val_text = v.boolean ? "true" : "false";
    } else if (type == "string") {
      v.kind = TestValue::Kind::string;
      if (!val.is_string()) throw SchemaError(where + ".val must be a string");
      v.val_text = val.get<std::string>();
    } else {
      v.kind = TestValue::Kind::number;
      if (!val.is_string() && !val.is_number())
        throw SchemaError(where + ".val must be a number or numeric string");
      v.val_text = scalar_text(val);
      try {
        v.number = parse_number(v.val_text, fmt, RoundingDirection::nearest_even);
        v.inexact = endpoint_inexact(v.val_text, fmt);
      } catch (const Error& e) {
        v.parse_issue = where + ": " + e.what();
      }
    }
    return v;
  }

  throw SchemaError(where + ".type must be interval, number, boolean, or string");
}

TestCase load_case(const json& j, std::size_t index) {
  const std::string where = "case " + std::to_string(index);
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  TestCase c;

  if (!j.contains("function") || !j["function"].is_string())
    throw SchemaError(where + ": function required");
  c.function_text = j["function"].get<std::string>();
  c.function = function_from_name(c.function_text);

  if (!j.contains("precision") || !j["precision"].is_number_integer())
    throw SchemaError(where + ": precision required");
  const std::int64_t p = j["precision"].get<std::int64_t>();
  if (p < 2 || p > (std::int64_t(1) << 22))
    throw SchemaError(where + ": precision out of range");
  c.precision = static_cast<int>(p);
  c.format = Format::wide(c.precision);

  if (j.contains("format_hint")) {
    if (!j["format_hint"].is_string())
      throw SchemaError(where + ": format_hint must be a string");
    c.format_hint = j["format_hint"].get<std::string>();
    if (*c.format_hint == "binary64") {
      c.format = Format::binary64();
    } else if (*c.format_hint == "binary32") {
      c.format = Format::binary32();
    } else {
      throw SchemaError(where + ": format_hint must be binary32 or binary64");
    }
  }

  if (!j.contains("input") || !j["input"].is_array())
    throw SchemaError(where + ": input required");
  std::size_t argi = 0;
  for (const json& e : j["input"]) {
    c.input.push_back(
        load_value(e, c.format, where + ": input[" + std::to_string(argi) + "]"));
    ++argi;
  }

  if (!j.contains("output") || !j["output"].is_object())
    throw SchemaError(where + ": output required");
  const json& out = j["output"];
  if (!out.contains("tight")) throw SchemaError(where + ": output.tight required");
  c.tight = load_value(out["tight"], c.format, where + ": output.tight");
  if (out.contains("accurate")) {
    if (c.tight.kind != TestValue::Kind::interval)
      throw SchemaError(where + ": output.accurate requires an interval output");
    c.accurate = load_value(out["accurate"], c.format, where + ": output.accurate");
  }

  if (j.contains("comment")) {
    if (!j["comment"].is_string())
      throw SchemaError(where + ": comment must be a string");
    c.comment = j["comment"].get<std::string>();
  }
  return c;
}

json parse_strict(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    syntax_error(text, e.byte ? e.byte - 1 : 0, e.what());
  }
}

ordered_json value_to_json(const TestValue& v) {
  ordered_json j;
  switch (v.kind) {
    case TestValue::Kind::interval: {
      j["type"] = "interval";
      if (v.parsed) {
        const Interval& x = v.parsed->interval;
        j["inf"] = x.is_empty() ? "inf" : format_hex(x.inf());
        j["sup"] = x.is_empty() ? "-inf" : format_hex(x.sup());
        j["dec"] = std::string(decoration_name(v.parsed->dec));
      } else {
        j["inf"] = v.inf_text;
        j["sup"] = v.sup_text;
        if (v.dec_text) j["dec"] = *v.dec_text;
      }
      return j;
    }
    case TestValue::Kind::number:
      j["type"] = "number";
      j["val"] = v.number ? format_hex(*v.number) : v.val_text;
      return j;
    case TestValue::Kind::boolean:
      j["type"] = "boolean";
      j["val"] = v.boolean;
      return j;
    case TestValue::Kind::string:
      j["type"] = "string";
      j["val"] = v.val_text;
      return j;
  }
  return j;
}

}  // namespace

TestSuite load_suite_text(std::string_view json_text, std::string source_name) {
  const json root = parse_strict(json_text);
  TestSuite s;
  s.source_name = std::move(source_name);
  if (root.is_object()) {
    s.cases.push_back(load_case(root, 0));
    return s;
  }
  if (!root.is_array())
    throw SchemaError("top level must be an array of cases or one case object");
  std::size_t i = 0;
  for (const json& e : root) s.cases.push_back(load_case(e, i++));
  return s;
}

TestSuite load_suite(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open suite file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_suite_text(buf.str(), path);
}

std::vector<Issue> validate_case(const TestCase& c, ParsePolicy policy) {
  std::vector<Issue> issues;
  auto fatal = [&](std::string m) { issues.push_back({true, std::move(m)}); };
  auto warn = [&](std::string m) { issues.push_back({false, std::move(m)}); };

  if (!c.function) warn("unknown function '" + c.function_text + "'");

  auto check_value = [&](const TestValue& v, const std::string& where) {
    if (v.parse_issue) fatal(*v.parse_issue);
    if (v.inexact && policy == ParsePolicy::require_exact)
      fatal(where + ": value not representable at precision " +
            std::to_string(c.precision));
  };
  for (std::size_t i = 0; i < c.input.size(); ++i)
    check_value(c.input[i], "input[" + std::to_string(i) + "]");
  check_value(c.tight, "output.tight");
  if (c.accurate) check_value(*c.accurate, "output.accurate");

  if (c.function && static_cast<int>(c.input.size()) != arity(*c.function))
    fatal("input arity " + std::to_string(c.input.size()) + " does not match " +
          std::string(function_name(*c.function)));
  if (c.function)
    for (std::size_t i = 0; i < c.input.size(); ++i)
      if (c.input[i].kind != TestValue::Kind::interval)
        fatal("input[" + std::to_string(i) + "] must be an interval");

  if (c.accurate && c.tight.parsed && c.accurate->parsed &&
      !subset(c.tight.parsed->interval, c.accurate->parsed->interval))
    fatal("tight not within accurate");

  return issues;
}

std::string suite_to_json(const TestSuite& s) {
  ordered_json root = ordered_json::array();
  for (const TestCase& c : s.cases) {
    ordered_json j;
    j["function"] = c.function_text;
    j["precision"] = c.precision;
    if (c.format_hint) j["format_hint"] = *c.format_hint;
    j["input"] = ordered_json::array();
    for (const TestValue& v : c.input) j["input"].push_back(value_to_json(v));
    j["output"] = ordered_json::object();
    j["output"]["tight"] = value_to_json(c.tight);
    if (c.accurate) j["output"]["accurate"] = value_to_json(*c.accurate);
    if (c.comment) j["comment"] = *c.comment;
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

void save_suite(const TestSuite& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path);
  out << suite_to_json(s);
  if (!out) throw Error("write failed: " + path);
}

TestValue value_from_interval(const Interval& x) {
  TestValue v;
  v.kind = TestValue::Kind::interval;
  if (x.is_empty()) {
    v.inf_text = "inf";
    v.sup_text = "-inf";
    v.parsed = DecoratedInterval{x, Decoration::trv};
  } else {
    v.inf_text = format_hex(x.inf());
    v.sup_text = format_hex(x.sup());
    v.parsed = DecoratedInterval{
        x, (x.inf().is_inf() || x.sup().is_inf()) ? Decoration::dac
                                                  : Decoration::com};
  }
  v.dec_text = std::string(decoration_name(v.parsed->dec));
  return v;
}

TestValue value_from_decorated(const DecoratedInterval& d) {
  TestValue v = value_from_interval(d.interval);
  v.parsed = d;
  v.dec_text = std::string(decoration_name(d.dec));
  return v;
}

TestValue parse_value_json(std::string_view json_object_text, const Format& fmt) {
  return load_value(parse_strict(json_object_text), fmt, "value");
}

std::string value_to_json_text(const TestValue& v) {
  return value_to_json(v).dump();
}

}  // namespace ivalkit
