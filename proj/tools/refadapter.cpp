// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.
//
// Reference adapter: answers the newline-delimited JSON evaluation protocol
// on stdin/stdout from the built-in engine. One reply per request line, ids
// echoed. Malformed requests produce an error reply rather than an exit, so
// a harness never hangs on this process.

#include <cstdint>
#include <iostream>
#include <string>

#include <json.hpp>

#include "ivalkit/errors.hpp"
#include "ivalkit/harness.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ivalkit::AdapterRequest decode(const json& req) {
  using namespace ivalkit;
  AdapterRequest q;
  if (!req.contains("function") || !req["function"].is_string())
    throw SchemaError("request.function required");
  q.function = req["function"].get<std::string>();
  if (!req.contains("precision") || !req["precision"].is_number_integer())
    throw SchemaError("request.precision required");
  const std::int64_t p = req["precision"].get<std::int64_t>();
  if (p < 2 || p > (std::int64_t(1) << 22))
    throw SchemaError("request.precision out of range");
  q.precision = static_cast<int>(p);
  q.format = Format::wide(q.precision);
  if (req.contains("format_hint") && req["format_hint"].is_string()) {
    q.format_hint = req["format_hint"].get<std::string>();
    if (*q.format_hint == "binary64")
      q.format = Format::binary64();
    else if (*q.format_hint == "binary32")
      q.format = Format::binary32();
    else
      throw SchemaError("request.format_hint must be binary32 or binary64");
  }
  if (!req.contains("input") || !req["input"].is_array())
    throw SchemaError("request.input required");
  for (const json& e : req["input"]) {
    TestValue v = parse_value_json(e.dump(), q.format);
    if (v.parse_issue) throw SchemaError(*v.parse_issue);
    q.input.push_back(std::move(v));
  }
  return q;
}

}  // namespace

int main() {
  std::ios::sync_with_stdio(false);
  ivalkit::BuiltinAdapter engine;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    std::uint64_t id = 0;
    ordered_json out;
    try {
      const json req = json::parse(line);
      if (req.is_object() && req.contains("id") && req["id"].is_number())
        id = req["id"].get<std::uint64_t>();
      out["id"] = id;
      const ivalkit::AdapterReply r = engine.call(decode(req));
      switch (r.status) {
        case ivalkit::AdapterReply::Status::ok:
          out["status"] = "ok";
          out["value"] = ordered_json::parse(ivalkit::value_to_json_text(r.value));
          break;
        case ivalkit::AdapterReply::Status::unsupported:
          out["status"] = "unsupported";
          break;
        case ivalkit::AdapterReply::Status::error:
          out["status"] = "error";
          out["detail"] = r.detail;
          break;
      }
    } catch (const std::exception& e) {
      out.clear();
      out["id"] = id;
      out["status"] = "error";
      out["detail"] = e.what();
    }
    std::cout << out.dump() << "\n" << std::flush;
  }
  return 0;
}
