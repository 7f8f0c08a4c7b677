// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/hexfloat.hpp"

#include <random>

#include "doctest.h"
#include "ivalkit/errors.hpp"
#include "support.hpp"

using namespace ivalkit;
using testkit::bf;

namespace {
const Format b64 = Format::binary64();
}  // namespace

TEST_SUITE_BEGIN("hexfloat");

TEST_CASE("grammar forms agree on one value") {
  CHECK(bf("0x1.8@0", b64) == bf("1.5", b64));
  CHECK(bf("0x1.8p1", b64) == bf("3", b64));
  CHECK(bf("0xc@-1", b64) == bf("0.75", b64));
  CHECK(bf("2.5e1", b64) == bf("25", b64));
  CHECK(bf("-0X1.FP3", b64) == bf("-15.5", b64));  // case-insensitive
  CHECK(bf("Inf", b64).is_inf());
  CHECK(bf("-inf", b64).sign() == -1);
  CHECK(bf("NaN", b64).is_nan());
}

TEST_CASE("precision-23 parse keeps the raw significand") {
  const Format w23 = Format::wide(23);
  const BigFloat x = bf("0xf.fe1e00@-1", w23, RoundingDirection::down);
  CHECK(x.significand() == BigInt(0x7FF0F0));
  CHECK(x.lsb_exponent() == -23);
  CHECK(x.exponent() == -1);
  CHECK(format_hex(x) == "0xf.fe1e@-1");  // trailing zeros trim away
}

TEST_CASE("directed rounding of an inexact decimal") {
  const BigFloat lo = bf("0.1", b64, RoundingDirection::down);
  const BigFloat hi = bf("0.1", b64, RoundingDirection::up);
  CHECK(lo == bf("0x1.9999999999999p-4", b64));
  CHECK(hi == bf("0x1.999999999999ap-4", b64));
  CHECK(bf("0.1", b64) == hi);  // nearest lands on the upper neighbor
  CHECK(bf("-0.1", b64, RoundingDirection::toward_zero) == lo.negated());
}

TEST_CASE("require_exact rejects values that would move") {
  CHECK_THROWS_AS(parse_number("0.1", b64, RoundingDirection::down,
                               ParsePolicy::require_exact),
                  PrecisionError);
  CHECK(parse_number("0.5", b64, RoundingDirection::down,
                     ParsePolicy::require_exact) == bf("0.5", b64));
  CHECK_THROWS_AS(parse_number("0x1.000001p0", Format::binary32(),
                               RoundingDirection::down,
                               ParsePolicy::require_exact),
                  PrecisionError);
}

TEST_CASE("parse errors carry the offending offset") {
  try {
    parse_number("0x1.2q3", b64, RoundingDirection::down);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_number("", b64, RoundingDirection::down), ParseError);
  CHECK_THROWS_AS(parse_number("0x", b64, RoundingDirection::down), ParseError);
  CHECK_THROWS_AS(parse_number("1.2.3", b64, RoundingDirection::down), ParseError);
}

TEST_CASE("canonical form: leading digit, trimming, specials") {
  CHECK(format_hex(bf("0.5", b64)) == "0x8@-1");
  CHECK(format_hex(bf("1", b64)) == "0x1@0");
  CHECK(format_hex(BigFloat::zero(b64)) == "0x0@0");
  CHECK(format_hex(BigFloat::infinity(b64, +1)) == "inf");
  CHECK(format_hex(BigFloat::infinity(b64, -1)) == "-inf");
  CHECK(format_hex(bf("-0x1.80p2", b64)) == "-0x6@0");
  CHECK(bf(format_hex(BigFloat::min_positive(b64)), b64,
           RoundingDirection::down) == BigFloat::min_positive(b64));
}

TEST_CASE("format then parse is the identity") {
  for (int p : {23, 53}) {
    const Format f = Format::wide(p);
    std::mt19937_64 rng(p);
    const BigInt span = BigFloat::max_ordinal(f);
    for (int i = 0; i < 1000; ++i) {
      BigInt o = (BigInt(rng()) * BigInt(rng())) % (span + 1);
      if (rng() & 1) o = -o;
      const BigFloat v = BigFloat::from_ordinal(o, f);
      const BigFloat back = parse_number(format_hex(v), f,
                                         RoundingDirection::down,
                                         ParsePolicy::require_exact);
      CHECK(back == v);
      CHECK(BigFloat::ordinal(back) == o);  // sign of zero included
    }
  }
}

TEST_SUITE_END();
