// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/bigfloat.hpp"

#include <random>

#include "doctest.h"
#include "ivalkit/hexfloat.hpp"
#include "support.hpp"

using namespace ivalkit;
using testkit::bf;

namespace {
const Format b64 = Format::binary64();
const Format b32 = Format::binary32();
}  // namespace

TEST_SUITE_BEGIN("bigfloat");

TEST_CASE("format presets") {
  CHECK(b64.precision_bits == 53);
  CHECK(b64.emin == -1022);
  CHECK(b64.emax == 1023);
  CHECK(b64.subnormals);
  CHECK(b64.min_leading_exponent() == -1074);

  CHECK(b32.precision_bits == 24);
  CHECK(b32.min_leading_exponent() == -149);

  const Format w = Format::wide(23);
  CHECK_FALSE(w.subnormals);
  CHECK(w.min_leading_exponent() == w.emin);
}

TEST_CASE("classification and canonical zero") {
  const BigFloat z = BigFloat::zero(b64);
  CHECK(z.is_zero());
  CHECK(z.is_finite());
  CHECK(z.sign() == +1);
  CHECK(z == bf("-0", b64));  // parsed -0 collapses to the canonical zero

  CHECK(BigFloat::infinity(b64, -1).is_inf());
  CHECK(BigFloat::quiet_nan(b64).is_nan());
  CHECK(BigFloat::min_positive(b64).is_subnormal());
  CHECK_FALSE(BigFloat::min_positive(Format::wide(23)).is_subnormal());
  CHECK(BigFloat::min_positive(Format::wide(23)).exponent() ==
        Format::wide(23).emin);
}

TEST_CASE("ordering and nan") {
  CHECK(compare(bf("1", b64), bf("2", b64)) == std::partial_ordering::less);
  CHECK(compare(BigFloat::infinity(b64, -1), bf("-1e300", b64)) ==
        std::partial_ordering::less);
  CHECK(compare(bf("3", b64), bf("3", b32)) == std::partial_ordering::equivalent);
  CHECK(compare(BigFloat::quiet_nan(b64), bf("0", b64)) ==
        std::partial_ordering::unordered);
  CHECK_FALSE(BigFloat::quiet_nan(b64) == BigFloat::quiet_nan(b64));
}

TEST_CASE("directed division brackets one third") {
  const BigFloat lo = arith(ArithOp::div, bf("1", b64), bf("3", b64), b64,
                            RoundingDirection::down);
  const BigFloat hi = arith(ArithOp::div, bf("1", b64), bf("3", b64), b64,
                            RoundingDirection::up);
  const BigFloat rn = arith(ArithOp::div, bf("1", b64), bf("3", b64), b64,
                            RoundingDirection::nearest_even);
  CHECK(lo == bf("0x1.5555555555555p-2", b64));
  CHECK(hi == bf("0x1.5555555555556p-2", b64));
  CHECK(next(lo, RoundingDirection::up) == hi);
  CHECK(rn == lo);  // the dropped tail starts with a 0 bit
}

TEST_CASE("arithmetic at the range edges") {
  const BigFloat m = BigFloat::max_finite(b64);
  CHECK(arith(ArithOp::add, m, m, b64, RoundingDirection::down) == m);
  CHECK(arith(ArithOp::add, m, m, b64, RoundingDirection::up).is_inf());

  // Indeterminate forms are nan, including division by an exact zero.
  const BigFloat inf = BigFloat::infinity(b64, +1);
  CHECK(arith(ArithOp::sub, inf, inf, b64, RoundingDirection::up).is_nan());
  CHECK(arith(ArithOp::mul, BigFloat::zero(b64), inf, b64,
              RoundingDirection::up).is_nan());
  CHECK(arith(ArithOp::div, bf("1", b64), BigFloat::zero(b64), b64,
              RoundingDirection::up).is_nan());

  // Exact small sums stay exact in every direction.
  for (RoundingDirection d : {RoundingDirection::down, RoundingDirection::up,
                              RoundingDirection::nearest_even}) {
    CHECK(arith(ArithOp::add, bf("0.5", b64), bf("0.25", b64), b64, d) ==
          bf("0.75", b64));
  }
}

TEST_CASE("make_rounded honors the sticky contract") {
  // mant * 2^-60 == 1 exactly, but sticky puts the true value just above it.
  const BigInt one60 = BigInt(1) << 60;
  CHECK(BigFloat::make_rounded(false, one60, -60, false, b64,
                               RoundingDirection::up) == bf("1", b64));
  const BigFloat up = BigFloat::make_rounded(false, one60, -60, true, b64,
                                             RoundingDirection::up);
  CHECK(up == next(bf("1", b64), RoundingDirection::up));
  CHECK(BigFloat::make_rounded(false, one60, -60, true, b64,
                               RoundingDirection::down) == bf("1", b64));
  bool inexact = false;
  BigFloat::make_rounded(false, one60, -60, true, b64,
                         RoundingDirection::nearest_even, &inexact);
  CHECK(inexact);
}

TEST_CASE("round_to steps across formats") {
  const BigFloat x = bf("0x1.921fb54442d18p+1", b64);
  const BigFloat lo = x.round_to(b32, RoundingDirection::down);
  const BigFloat hi = x.round_to(b32, RoundingDirection::up);
  CHECK(compare(lo, x) == std::partial_ordering::less);
  CHECK(compare(x, hi) == std::partial_ordering::less);
  CHECK(next(lo, RoundingDirection::up) == hi);
  CHECK(x.round_to(b32, RoundingDirection::nearest_even) ==
        bf("0x1.921fb6p+1", b32));
  CHECK(x.round_to(b32, RoundingDirection::toward_zero) == lo);

  // Values beyond the narrow range clamp directionally.
  const BigFloat big = bf("1e300", b64);
  CHECK(big.round_to(b32, RoundingDirection::up).is_inf());
  CHECK(big.round_to(b32, RoundingDirection::down) == BigFloat::max_finite(b32));
}

TEST_CASE("next walks the representable chain") {
  using RD = RoundingDirection;
  const BigFloat z = BigFloat::zero(b64);
  CHECK(next(z, RD::up) == BigFloat::min_positive(b64));
  CHECK(next(BigFloat::min_positive(b64), RD::down) == z);
  CHECK(next(z, RD::down) == BigFloat::min_positive(b64).negated());
  CHECK(next(BigFloat::max_finite(b64), RD::up).is_inf());
  CHECK(next(BigFloat::infinity(b64, +1), RD::up).is_inf());
  CHECK(next(BigFloat::infinity(b64, +1), RD::down) == BigFloat::max_finite(b64));
  CHECK(next(bf("1", b64), RD::up) == bf("0x1.0000000000001p0", b64));
}

TEST_CASE("ordinals index the representable set") {
  CHECK(BigFloat::ordinal(BigFloat::zero(b64)) == 0);
  CHECK(BigFloat::from_ordinal(BigInt(1), b64) == BigFloat::min_positive(b64));
  CHECK(BigFloat::ordinal(BigFloat::max_finite(b64)) == BigFloat::max_ordinal(b64));

  const BigFloat x = bf("1.5", b64);
  CHECK(BigFloat::ordinal(x.negated()) == -BigFloat::ordinal(x));

  // Adjacent ordinals are adjacent values.
  const BigInt o = BigFloat::ordinal(x);
  CHECK(BigFloat::from_ordinal(o + 1, b64) == next(x, RoundingDirection::up));

  for (const Format& f : {b64, b32, Format::wide(23)}) {
    std::mt19937_64 rng(2026);
    const BigInt span = BigFloat::max_ordinal(f);
    for (int i = 0; i < 2000; ++i) {
      BigInt o2 = (BigInt(rng()) * BigInt(rng())) % (span + 1);
      if (rng() & 1) o2 = -o2;
      const BigFloat v = BigFloat::from_ordinal(o2, f);
      CHECK(BigFloat::ordinal(v) == o2);
    }
  }
}

TEST_CASE("round_from_bracket needs agreement") {
  const Format p8 = Format::wide(8);
  const Bracket tight(bf("1", b64), bf("0x1.0000000000001p0", b64));
  auto r = round_from_bracket(tight, p8, RoundingDirection::down);
  REQUIRE(r.has_value());
  CHECK(*r == bf("1", p8));

  // Ends straddling a p8 boundary cannot decide a directed rounding.
  const Bracket wide(bf("1", b64), bf("1.02", b64));
  CHECK_FALSE(round_from_bracket(wide, p8, RoundingDirection::down).has_value());
}

TEST_SUITE_END();
