// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/pointfuncs.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "ivalkit/errors.hpp"
#include "support.hpp"

using namespace ivalkit;
using testkit::bf;

namespace {

const Format b64 = Format::binary64();
using RD = RoundingDirection;

BigFloat ecr(FunctionId f, const BigFloat& x, RD d,
             const EvalOptions& opts = {}) {
  return eval_correctly_rounded(f, {x}, b64, d, opts);
}

// Values frozen from an independent multiprecision evaluation.
struct Anchor {
  FunctionId f;
  const char* arg;
  const char* nearest;
};

const Anchor kAnchors[] = {
    {FunctionId::exp, "0.5", "0x1.a61298e1e069cp+0"},
    {FunctionId::log, "3", "0x1.193ea7aad030bp+0"},
    {FunctionId::cos, "2", "-0x1.aa22657537205p-2"},
    {FunctionId::sin, "2", "0x1.d18f6ead1b446p-1"},
    {FunctionId::atanh, "-0.75", "-0x1.f2272ae325a57p-1"},
    {FunctionId::log2, "0.7", "-0x1.0776228967d13p-1"},
    {FunctionId::cbrt, "5", "0x1.b5c0fbcfec4d4p+0"},
    {FunctionId::sqrt, "10", "0x1.94c583ada5b53p+1"},
    {FunctionId::sin, "0x1p60", "-0x1.a94adab06665cp-1"},
    {FunctionId::cos, "0x1p60", "-0x1.1d146047d6947p-1"},
    {FunctionId::sin, "0x1p600", "-0x1.61e930adf5a34p-2"},
    {FunctionId::exp, "-709", "0x0.8bfe55de02338p-1022"},
    {FunctionId::exp, "0.0009765625", "0x1.00400800aab55p+0"},
    {FunctionId::log, "0x1.0000000001p0", "0x1.ffffffffff000p-41"},
    {FunctionId::atanh, "0x1.fffffffffffffp-1", "0x1.2b708872320e2p+4"},
    {FunctionId::sin, "0x1.921fb54442d18p+1", "0x1.1a62633145c07p-53"},
};

}  // namespace

TEST_SUITE_BEGIN("pointfuncs");

TEST_CASE("names, arity, domains") {
  CHECK(arity(FunctionId::add) == 2);
  CHECK(arity(FunctionId::atanh) == 1);
  CHECK(function_name(FunctionId::exp2) == "exp2");
  CHECK(function_from_name("cbrt") == FunctionId::cbrt);
  CHECK_FALSE(function_from_name("tan").has_value());

  CHECK_FALSE(domain_of(FunctionId::log).contains(BigFloat::zero(b64)));
  CHECK(domain_of(FunctionId::sqrt).contains(BigFloat::zero(b64)));
  CHECK_FALSE(domain_of(FunctionId::sqrt).contains_interior(BigFloat::zero(b64)));
  CHECK_FALSE(domain_of(FunctionId::atanh).contains(bf("1", b64)));
  CHECK(domain_of(FunctionId::atanh).contains(bf("0.999", b64)));
  CHECK(domain_of(FunctionId::div, 1).excludes_zero);
  CHECK_FALSE(domain_of(FunctionId::div, 0).excludes_zero);
}

TEST_CASE("frozen directed anchors") {
  for (const Anchor& a : kAnchors) {
    CAPTURE(function_name(a.f));
    CAPTURE(a.arg);
    const BigFloat x = bf(a.arg, b64);
    const BigFloat want = bf(a.nearest, b64, RD::down, ParsePolicy::require_exact);
    const BigFloat rn = ecr(a.f, x, RD::nearest_even);
    const BigFloat lo = ecr(a.f, x, RD::down);
    const BigFloat hi = ecr(a.f, x, RD::up);
    CHECK(rn == want);
    CHECK(next(lo, RD::up) == hi);  // truly inexact: adjacent neighbors
    CHECK((rn == lo || rn == hi));
    CHECK(compare(lo, hi) == std::partial_ordering::less);
  }
}

TEST_CASE("toward_zero matches the sign-appropriate direction") {
  const BigFloat pos = bf("0.5", b64);
  CHECK(ecr(FunctionId::exp, pos, RD::toward_zero) ==
        ecr(FunctionId::exp, pos, RD::down));
  const BigFloat neg = bf("-0.75", b64);
  CHECK(ecr(FunctionId::atanh, neg, RD::toward_zero) ==
        ecr(FunctionId::atanh, neg, RD::up));
}

TEST_CASE("total underflow rounds to the zero edge") {
  const BigFloat x = bf("-746", b64);
  CHECK(ecr(FunctionId::exp, x, RD::down) == BigFloat::zero(b64));
  CHECK(ecr(FunctionId::exp, x, RD::up) == BigFloat::min_positive(b64));
  CHECK(ecr(FunctionId::exp, x, RD::nearest_even) == BigFloat::zero(b64));
}

TEST_CASE("exact cases round identically in every direction") {
  struct Row {
    FunctionId f;
    const char* arg;
    const char* want;
  };
  const Row rows[] = {
      {FunctionId::exp, "0", "1"},       {FunctionId::log, "1", "0"},
      {FunctionId::exp2, "5", "32"},     {FunctionId::log2, "1024", "10"},
      {FunctionId::sqrt, "2.25", "1.5"}, {FunctionId::cbrt, "0x1p-9", "0x1p-3"},
      {FunctionId::sin, "0", "0"},       {FunctionId::cos, "0", "1"},
      {FunctionId::atanh, "0", "0"},     {FunctionId::sqr, "1.5", "2.25"},
  };
  for (const Row& r : rows) {
    CAPTURE(function_name(r.f));
    const BigFloat x = bf(r.arg, b64);
    const auto ex = exact_case(r.f, {x}, b64);
    REQUIRE(ex.has_value());
    CHECK(*ex == bf(r.want, b64));
    for (RD d : {RD::down, RD::up, RD::nearest_even, RD::toward_zero})
      CHECK(ecr(r.f, x, d) == bf(r.want, b64));
  }
  CHECK_FALSE(exact_case(FunctionId::exp, {bf("1", b64)}, b64).has_value());
  CHECK_FALSE(exact_case(FunctionId::sqrt, {bf("2", b64)}, b64).has_value());
}

TEST_CASE("domain violations throw DomainError") {
  CHECK_THROWS_AS(ecr(FunctionId::log, bf("-1", b64), RD::down), DomainError);
  CHECK_THROWS_AS(ecr(FunctionId::sqrt, bf("-2", b64), RD::down), DomainError);
  CHECK_THROWS_AS(ecr(FunctionId::atanh, bf("1", b64), RD::down), DomainError);
  CHECK_THROWS_AS(ecr(FunctionId::log, BigFloat::zero(b64), RD::down), DomainError);
  CHECK_THROWS_AS(ecr(FunctionId::exp, BigFloat::quiet_nan(b64), RD::down),
                  DomainError);
  CHECK_THROWS_AS(eval_correctly_rounded(FunctionId::div,
                                         {bf("1", b64), BigFloat::zero(b64)},
                                         b64, RD::down),
                  DomainError);
}

TEST_CASE("two-argument evaluation is plain directed arithmetic") {
  const BigFloat one = bf("1", b64);
  const BigFloat tiny = bf("0x1p-60", b64);
  CHECK(eval_correctly_rounded(FunctionId::add, {one, tiny}, b64, RD::down) == one);
  CHECK(eval_correctly_rounded(FunctionId::add, {one, tiny}, b64, RD::up) ==
        next(one, RD::up));
  CHECK(eval_correctly_rounded(FunctionId::mul, {bf("3", b64), bf("4", b64)},
                               b64, RD::up) == bf("12", b64));
}

TEST_CASE("faithful brackets nest as precision grows") {
  const struct {
    FunctionId f;
    const char* arg;
  } probes[] = {{FunctionId::exp, "0.5"},
                {FunctionId::sin, "2"},
                {FunctionId::log, "3"},
                {FunctionId::cbrt, "5"}};
  for (const auto& pr : probes) {
    CAPTURE(function_name(pr.f));
    const BigFloat x = bf(pr.arg, b64);
    for (std::int64_t q : {30, 64, 200}) {
      const Bracket narrow = eval_faithful(pr.f, {x}, 3 * q);
      const Bracket wide = eval_faithful(pr.f, {x}, q);
      CHECK(compare(wide.lo, narrow.lo) != std::partial_ordering::greater);
      CHECK(compare(narrow.hi, wide.hi) != std::partial_ordering::greater);
      // Width stays within two steps at the working precision.
      CHECK(compare(narrow.hi,
                    next(next(narrow.lo, RD::up), RD::up)) !=
            std::partial_ordering::greater);
    }
  }
}

TEST_CASE("resource limits surface as ResourceError") {
  const Format w53 = Format::wide(53);
  const BigFloat huge = bf("0x1p70000", w53);
  CHECK_THROWS_AS(eval_correctly_rounded(FunctionId::sin, {huge}, w53, RD::down),
                  ResourceError);
}

TEST_CASE("escalation_for unlocks near-fixed-point arguments") {
  // atanh(x) hugs x to ~2|e| bits. The deepest binary64 argument sits at
  // 2^-1074, needing ~2150 surplus bits, past the default schedule ceiling.
  const BigFloat tiny = BigFloat::min_positive(b64);
  CHECK_THROWS_AS(ecr(FunctionId::atanh, tiny, RD::down), ResourceError);

  const EvalOptions opts = escalation_for({tiny}, b64);
  CHECK(opts.max_extra >= 2151);
  CHECK(ecr(FunctionId::atanh, tiny, RD::down, opts) == tiny);
  CHECK(ecr(FunctionId::atanh, tiny, RD::up, opts) == next(tiny, RD::up));
  CHECK(ecr(FunctionId::sin, tiny, RD::up, opts) == tiny);
  CHECK(ecr(FunctionId::sin, tiny, RD::down, opts) == BigFloat::zero(b64));

  // Shallow arguments keep the default ceiling.
  CHECK(escalation_for({bf("0x1p-800", b64)}, b64).max_extra == 2000);
  CHECK(escalation_for({bf("0.5", b64)}, b64).max_extra == 2000);
}

TEST_CASE("pi enclosure brackets pi and refines inward") {
  const Format w = Format::wide(90);
  const BigFloat below = bf("3.14159265358979323", w, RD::down);
  const BigFloat above = bf("3.14159265358979324", w, RD::up);
  const Bracket coarse = pi_enclosure(60);
  const Bracket fine = pi_enclosure(200);
  CHECK(compare(coarse.lo, above) == std::partial_ordering::less);
  CHECK(compare(below, coarse.hi) == std::partial_ordering::less);
  CHECK(compare(coarse.lo, fine.lo) != std::partial_ordering::greater);
  CHECK(compare(fine.hi, coarse.hi) != std::partial_ordering::greater);
  CHECK_THROWS(pi_enclosure(1));
}

TEST_SUITE_END();
