// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <string_view>

#include "ivalkit/hexfloat.hpp"
#include "ivalkit/interval.hpp"

namespace testkit {

using namespace ivalkit;

inline BigFloat bf(std::string_view text, const Format& f,
                   RoundingDirection d = RoundingDirection::nearest_even,
                   ParsePolicy policy = ParsePolicy::round_in_direction) {
  return parse_number(text, f, d, policy);
}

inline DecoratedInterval div_lit(std::string_view text, const Format& f) {
  return parse_interval_literal(text, f);
}

inline Interval iv(std::string_view text, const Format& f) {
  return parse_interval_literal(text, f).interval;
}

}  // namespace testkit
