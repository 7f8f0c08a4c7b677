// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/generator.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "ivalkit/errors.hpp"
#include "ivalkit/harness.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace ivalkit;
using testkit::bf;
using testkit::iv;

namespace {

const Format b64 = Format::binary64();
const Format w23 = Format::wide(23);
const Format w12 = Format::wide(12);

bool clean(const TestCase& c) {
  for (const Issue& i : validate_case(c))
    if (i.fatal) return false;
  return true;
}

SearchRange binade_1_2() {
  return SearchRange{bf("1", w12), next(bf("2", w12), RoundingDirection::down),
                     w12};
}

// Independent run check: both faithful bracket ends must agree on the first
// p+h magnitude bits and the h bits after the target precision must be one
// solid run.
std::optional<RunKind> run_at(FunctionId f, const BigFloat& x, int p, int h) {
  const Bracket b = eval_faithful(f, {x}, p + h + 128);
  if (!b.lo.is_finite_nonzero() || !b.hi.is_finite_nonzero()) return std::nullopt;
  if (b.lo.sign() != b.hi.sign()) return std::nullopt;
  if (b.lo.exponent() != b.hi.exponent()) return std::nullopt;
  const auto top = [&](const BigFloat& v) -> BigInt {
    const std::int64_t len = bit_length(v.significand());
    const std::int64_t k = p + h;
    return len >= k ? BigInt(v.significand() >> (len - k))
                    : BigInt(v.significand() << (k - len));
  };
  const BigInt a = top(b.lo);
  if (a != top(b.hi)) return std::nullopt;
  const BigInt mask = (BigInt(1) << h) - 1;
  const BigInt run = a & mask;
  if (run == 0) return RunKind::zeros;
  if (run == mask) return RunKind::ones;
  return std::nullopt;
}

}  // namespace

TEST_SUITE_BEGIN("generator");

TEST_CASE("expected outputs match the engine and bound it") {
  const std::vector<Interval> in = {iv("[0,1]", b64)};
  const ExpectedOutputs eo = expected_outputs(FunctionId::exp, in, b64);
  const DecoratedInterval engine = eval_decorated(
      FunctionId::exp, {decorated(in[0], Decoration::com)}, b64);
  CHECK(equal(eo.tight.interval, engine.interval));
  CHECK(eo.tight.dec == engine.dec);
  CHECK(subset(eo.tight.interval, eo.accurate.interval));
  CHECK(interior(eo.tight.interval, eo.accurate.interval));
  CHECK(eo.accurate.dec == eo.tight.dec);
}

TEST_CASE("precision-23 anchor values") {
  const BigFloat hi = bf("0xf.fe1e00@-1", w23, RoundingDirection::down);
  const ExpectedOutputs eo =
      expected_outputs(FunctionId::atanh, {Interval(hi.negated(), hi)}, w23);

  const BigFloat t = bf("0x4.305fa0@0", w23, RoundingDirection::down);
  const BigFloat a = bf("0x4.306830@0", w23, RoundingDirection::down);
  CHECK(eo.tight.interval.sup() == t);
  CHECK(eo.tight.interval.inf() == t.negated());
  CHECK(eo.tight.dec == Decoration::com);
  CHECK(eo.accurate.interval.sup() == a);
  CHECK(eo.accurate.interval.inf() == a.negated());
  CHECK(eo.accurate.dec == Decoration::com);
}

TEST_CASE("accurate decoration degrades when widening escapes to infinity") {
  const BigFloat m = BigFloat::max_finite(b64);
  const ExpectedOutputs eo = expected_outputs(
      FunctionId::mul, {Interval::singleton(m), iv("[1,1]", b64)}, b64);
  CHECK(eo.tight.dec == Decoration::com);
  CHECK(eo.tight.interval.sup() == m);
  CHECK(eo.accurate.dec == Decoration::dac);
  CHECK(eo.accurate.interval.sup().is_inf());
}

TEST_CASE("make_case produces self-consistent cases") {
  const TestCase c = make_case(FunctionId::mul,
                               {iv("[-1,2]", b64), iv("[-3,4]", b64)}, b64);
  CHECK(c.function == FunctionId::mul);
  CHECK(c.precision == 53);
  CHECK(c.format_hint == "binary64");
  CHECK(clean(c));
  CHECK(equal(c.tight.parsed->interval, iv("[-6,8]", b64)));

  BuiltinAdapter builtin;
  CHECK(run_case(c, builtin, AccuracyClaim::tight).kind == VerdictKind::pass_tight);

  const TestCase bare = make_case(FunctionId::exp, {iv("[0,1]", w23)}, w23);
  CHECK_FALSE(bare.format_hint.has_value());
  CHECK(bare.precision == 23);
}

TEST_CASE("category presets hold the generated-case invariants") {
  BuiltinAdapter builtin;
  for (FunctionId f : {FunctionId::cbrt, FunctionId::exp, FunctionId::sin,
                       FunctionId::atanh, FunctionId::div}) {
    for (CaseCategory cat :
         {CaseCategory::easy, CaseCategory::special, CaseCategory::exceptional}) {
      CAPTURE(function_name(f));
      CAPTURE(category_name(cat));
      const auto cases = emit_category_cases(f, b64, cat);
      CHECK_FALSE(cases.empty());
      for (const TestCase& c : cases) {
        CHECK(clean(c));
        if (c.accurate && c.tight.parsed && c.accurate->parsed)
          CHECK(subset(c.tight.parsed->interval, c.accurate->parsed->interval));
        CHECK(run_case(c, builtin, AccuracyClaim::tight).kind ==
              VerdictKind::pass_tight);
      }
    }
  }
}

TEST_CASE("category tables include the signature cases") {
  const auto exp_easy = emit_category_cases(FunctionId::exp, b64, CaseCategory::easy);
  const bool has_unit = std::any_of(
      exp_easy.begin(), exp_easy.end(), [&](const TestCase& c) {
        return c.input[0].parsed &&
               equal(c.input[0].parsed->interval, iv("[0,0]", b64)) &&
               equal(c.tight.parsed->interval, iv("[1,1]", b64));
      });
  CHECK(has_unit);

  const auto atanh_special =
      emit_category_cases(FunctionId::atanh, b64, CaseCategory::special);
  const bool has_edge = std::any_of(
      atanh_special.begin(), atanh_special.end(), [&](const TestCase& c) {
        return c.input[0].parsed &&
               equal(c.input[0].parsed->interval, iv("[0,1]", b64)) &&
               equal(c.tight.parsed->interval, iv("[0,inf]", b64)) &&
               c.tight.parsed->dec == Decoration::trv;
      });
  CHECK(has_edge);

  const auto exp_exc =
      emit_category_cases(FunctionId::exp, b64, CaseCategory::exceptional);
  const bool has_nai = std::any_of(
      exp_exc.begin(), exp_exc.end(), [&](const TestCase& c) {
        return c.input[0].parsed && c.input[0].parsed->dec == Decoration::ill &&
               c.tight.parsed && c.tight.parsed->dec == Decoration::ill &&
               c.comment && c.comment->find("rejected") != std::string::npos;
      });
  CHECK(has_nai);

  CHECK(category_from_name("special") == CaseCategory::special);
  CHECK_FALSE(category_from_name("bogus").has_value());
  CHECK(category_name(CaseCategory::exceptional) == "exceptional");
}

TEST_CASE("hard-case search finds certified runs") {
  const SearchRange r = binade_1_2();
  const auto hits = find_hard_cases(FunctionId::exp, r, 10);
  CHECK_FALSE(hits.empty());

  for (const HardCase& h : hits) {
    CAPTURE(format_hex(h.x));
    CHECK(h.function == FunctionId::exp);
    CHECK(h.hardness >= 10);
    CHECK(compare(r.t0, h.x) != std::partial_ordering::greater);
    CHECK(compare(h.x, r.t1) != std::partial_ordering::greater);
    CHECK_FALSE(exact_case(FunctionId::exp, {h.x}, w12).has_value());

    const auto kind = run_at(FunctionId::exp, h.x, 12, 10);
    REQUIRE(kind.has_value());
    CHECK(*kind == h.run_kind);
    const std::vector<RoundingDirection> want =
        h.run_kind == RunKind::zeros
            ? std::vector<RoundingDirection>{RoundingDirection::down,
                                             RoundingDirection::toward_zero}
            : std::vector<RoundingDirection>{RoundingDirection::up};
    CHECK(h.direction_affected == want);
  }

  // Results are argument-ordered and stable under a higher starting precision.
  HardSearchOptions deep;
  deep.start_extra = 128;
  const auto again = find_hard_cases(FunctionId::exp, r, 10, RunFilter::both, deep);
  REQUIRE(again.size() == hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    CHECK(again[i].x == hits[i].x);
    CHECK(again[i].run_kind == hits[i].run_kind);
    if (i) CHECK(compare(hits[i - 1].x, hits[i].x) == std::partial_ordering::less);
  }

  // Parallel scan merges to the identical list.
  HardSearchOptions par;
  par.jobs = 4;
  const auto parallel = find_hard_cases(FunctionId::exp, r, 10, RunFilter::both, par);
  REQUIRE(parallel.size() == hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i)
    CHECK(parallel[i].x == hits[i].x);

  // Run filters select subsets.
  const auto zeros =
      find_hard_cases(FunctionId::exp, r, 10, RunFilter::zeros);
  CHECK(std::all_of(zeros.begin(), zeros.end(), [](const HardCase& h) {
    return h.run_kind == RunKind::zeros;
  }));
  CHECK(zeros.size() < hits.size());

  // Arguments the scan rejected really lack the run.
  std::set<std::string> reported;
  for (const HardCase& h : hits) reported.insert(format_hex(h.x));
  int checked = 0;
  BigFloat x = r.t0;
  while (checked < 100) {
    if (!reported.count(format_hex(x))) {
      CAPTURE(format_hex(x));
      CHECK_FALSE(run_at(FunctionId::exp, x, 12, 10).has_value());
      ++checked;
    }
    x = next(x, RoundingDirection::up);
  }
}

TEST_CASE("search guardrails") {
  CHECK_THROWS_AS(find_hard_cases(FunctionId::add, binade_1_2(), 10), Error);
  CHECK_THROWS_AS(find_hard_cases(FunctionId::exp, binade_1_2(), 0), Error);
  CHECK_THROWS_AS(
      find_hard_cases(FunctionId::exp,
                      SearchRange{bf("1", w12), bf("3", w12), w12}, 10),
      Error);
  CHECK_THROWS_AS(
      find_hard_cases(FunctionId::exp,
                      SearchRange{bf("-1", w12), bf("1.5", w12), w12}, 10),
      Error);

  HardSearchOptions tiny;
  tiny.budget = 100;
  CHECK_THROWS_AS(
      find_hard_cases(FunctionId::exp, binade_1_2(), 10, RunFilter::both, tiny),
      ResourceError);
}

TEST_CASE("hard cases export as singleton suites with metadata") {
  const SearchRange r = binade_1_2();
  const auto hits = find_hard_cases(FunctionId::sin, r, 8);
  REQUIRE_FALSE(hits.empty());

  const TestSuite s = hard_cases_to_suite(hits, w12);
  REQUIRE(s.cases.size() == hits.size());
  BuiltinAdapter builtin;
  for (std::size_t i = 0; i < s.cases.size(); ++i) {
    const TestCase& c = s.cases[i];
    CHECK(c.precision == 12);
    REQUIRE(c.input.size() == 1);
    const Interval& in = c.input[0].parsed->interval;
    CHECK(in.inf() == in.sup());
    CHECK(in.inf() == hits[i].x);
    // Hardness means inexactness: the tight hull of a singleton is two wide.
    CHECK_FALSE(equal(c.tight.parsed->interval,
                      Interval::singleton(c.tight.parsed->interval.inf())));
    CHECK(clean(c));
    CHECK(run_case(c, builtin, AccuracyClaim::tight).kind ==
          VerdictKind::pass_tight);
    CHECK(c.comment.has_value());
  }

  const nlohmann::json meta = nlohmann::json::parse(
      hard_cases_metadata_json(FunctionId::sin, r, 8, hits));
  CHECK(meta.at("function") == "sin");
  CHECK(meta.at("precision") == 12);
  CHECK(meta.at("hardness") == 8);
  CHECK(meta.at("count").get<std::size_t>() == hits.size());
  CHECK(meta.at("cases").size() == hits.size());
  CHECK(meta.at("cases")[0].contains("run_kind"));
}

TEST_SUITE_END();
