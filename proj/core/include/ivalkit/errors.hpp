// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivalkit {

// Base class for all library errors so callers can catch the whole family.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Text that does not match the number or interval grammar. `position` is the
// byte offset of the first offending character within the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

// A value that parses but cannot be represented exactly where exactness is
// required (exact-required parse policy, suite validation).
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Interval construction that violates a validity rule. `rule` names the rule
// in a stable machine-checkable spelling (e.g. "nan-endpoint").
class IllFormedError : public Error {
 public:
  IllFormedError(const std::string& what, std::string rule)
      : Error(what), rule_(std::move(rule)) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

// Structurally valid JSON that does not match the suite schema. The message
// names the offending field and, where applicable, the case index.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Point evaluation outside a function's domain (e.g. log of a nonpositive
// value, or an argument class the operation cannot accept).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Work exceeding a configured bound: working-precision ceilings, argument
// budgets, runaway exponent ranges.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A subprocess adapter violating the wire protocol (bad JSON, id mismatch,
// missing fields, timeout).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivalkit
