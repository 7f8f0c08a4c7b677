// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <string>
#include <string_view>

#include "ivalkit/bigfloat.hpp"

namespace ivalkit {

enum class ParsePolicy { round_in_direction, require_exact };

// Parses one numeric token into `target`, rounding inexact values in `dir`
// (or throwing PrecisionError under require_exact). Accepted forms:
//   [-]0xH(.H*)?@E   hex digits scaled by a power of 16, exponent in decimal
//   [-]0xH(.H*)?pE   C-style hex float (power-of-two exponent)
//   [-]D(.D*)?(eE)?  decimal
//   inf, +inf, -inf, nan   (case-insensitive; so are hex digits and 0x/p)
// Throws ParseError with a byte offset for text outside the grammar.
BigFloat parse_number(std::string_view text, const Format& target,
                      RoundingDirection dir,
                      ParsePolicy policy = ParsePolicy::round_in_direction);

// Canonical lowercase hex form: one leading hex digit in [1,f], trailing zero
// digits trimmed, "@" exponent. Unique per value; format_hex output parses
// back bit-exactly in the value's own format. Zero prints "0x0@0",
// infinities "inf"/"-inf". The value must not be nan.
std::string format_hex(const BigFloat& x);

}  // namespace ivalkit
