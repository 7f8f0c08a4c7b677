// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/generator.hpp"

#include <algorithm>
#include <mutex>
#include <thread>
#include <utility>

#include <json.hpp>

#include "ivalkit/errors.hpp"

namespace ivalkit {
namespace {

using nlohmann::ordered_json;

Decoration infer_dec(const Interval& x) {
  if (x.is_empty()) return Decoration::trv;
  if (x.inf().is_inf() || x.sup().is_inf()) return Decoration::dac;
  return Decoration::com;
}

std::vector<DecoratedInterval> with_inferred(const std::vector<Interval>& xs) {
  std::vector<DecoratedInterval> out;
  out.reserve(xs.size());
  for (const Interval& x : xs) out.push_back(decorated(x, infer_dec(x)));
  return out;
}

// Bits 1..k of |f(x)| when the bracket pins them (both ends share sign,
// leading exponent, and k-bit prefix); nullopt asks for more precision.
std::optional<BigInt> pinned_prefix(const Bracket& b, std::int64_t k) {
  if (!b.lo.is_finite_nonzero() || !b.hi.is_finite_nonzero()) return std::nullopt;
  if (b.lo.sign() != b.hi.sign()) return std::nullopt;
  BigFloat alo = b.lo.abs(), ahi = b.hi.abs();
  if (b.lo.sign() < 0) std::swap(alo, ahi);
  if (alo.exponent() != ahi.exponent()) return std::nullopt;
  auto prefix = [k](const BigFloat& a) {
    const std::int64_t extra = bit_length(a.significand()) - k;
    if (extra >= 0) return BigInt(a.significand() >> static_cast<unsigned>(extra));
    return BigInt(a.significand() << static_cast<unsigned>(-extra));
  };
  BigInt lo = prefix(alo), hi = prefix(ahi);
  if (lo != hi) return std::nullopt;
  return lo;
}

enum class RunClass { not_hard, zeros, ones };

// Pins bits p+1..p+h of f(x)'s expansion, escalating working precision until
// the bracket stops straddling a prefix boundary.
RunClass resolve_run(FunctionId f, const BigFloat& x, std::int64_t p, int h,
                     std::int64_t start_extra) {
  const std::int64_t cap = std::int64_t(1) << 22;
  const BigInt mask = (BigInt(1) << static_cast<unsigned>(h)) - 1;
  for (std::int64_t q = p + h + start_extra;; q *= 2) {
    if (q > cap)
      throw ResourceError("cannot pin the bit run for " + format_hex(x) +
                          " within the working precision ceiling");
    const auto m = pinned_prefix(eval_faithful(f, {x}, q), p + h);
    if (!m) continue;
    const BigInt r = *m & mask;
    if (r == 0) return RunClass::zeros;
    if (r == mask) return RunClass::ones;
    return RunClass::not_hard;
  }
}

bool is_power_of_two(const BigFloat& x) {
  return x.is_finite_nonzero() && (x.significand() & (x.significand() - 1)) == 0;
}

void check_range(const SearchRange& r) {
  if (!r.t0.is_finite_nonzero() || !r.t1.is_finite_nonzero() ||
      compare(r.t0, r.t1) != std::partial_ordering::less ||
      r.t0.sign() != r.t1.sign())
    throw Error("search range needs finite nonzero t0 < t1 of one sign");
  // One binade, allowing the far end to sit exactly on the power of two.
  const bool positive = r.t0.sign() > 0;
  const BigFloat& near = positive ? r.t0 : r.t1;
  const BigFloat& far = positive ? r.t1 : r.t0;
  if (far.exponent() != near.exponent() &&
      !(is_power_of_two(far) && far.exponent() == near.exponent() + 1))
    throw Error("search range must stay within one binade");
}

std::vector<RoundingDirection> affected(RunKind k) {
  if (k == RunKind::zeros)
    return {RoundingDirection::down, RoundingDirection::toward_zero};
  return {RoundingDirection::up};
}

std::string_view run_kind_name(RunKind k) {
  return k == RunKind::zeros ? "zeros" : "ones";
}

struct Preset {
  const char* a;
  const char* b;  // null for unary functions
};

std::vector<Preset> presets_for(FunctionId f, CaseCategory cat) {
  using enum FunctionId;
  if (cat == CaseCategory::easy) {
    switch (f) {
      case neg: return {{"[1, 2]", nullptr}, {"[-3, -1]", nullptr}, {"[0]", nullptr}};
      case add:
        return {{"[1, 2]", "[3, 4]"}, {"[0.5]", "[0.25]"}, {"[-1, 1]", "[-2, 2]"}};
      case sub: return {{"[1, 2]", "[0.5, 1]"}, {"[0]", "[1]"}, {"[-1, 1]", "[-1, 1]"}};
      case mul:
        return {{"[-1, 2]", "[-3, 4]"}, {"[2, 3]", "[4, 5]"}, {"[0.5, 2]", "[-2, -0.5]"}};
      case div:
        return {{"[1, 2]", "[4, 8]"}, {"[-6, 6]", "[2, 3]"}, {"[1]", "[3]"}};
      case sqr: return {{"[-3, 2]", nullptr}, {"[2]", nullptr}, {"[0.5, 1.5]", nullptr}};
      case sqrt: return {{"[4, 9]", nullptr}, {"[2]", nullptr}, {"[0, 1]", nullptr}};
      case cbrt:
        return {{"[-64]", nullptr}, {"[8, 27]", nullptr}, {"[1, 2]", nullptr},
                {"[5]", nullptr}};
      case exp:
        return {{"[0]", nullptr}, {"[1]", nullptr}, {"[-1, 0]", nullptr},
                {"[0.5]", nullptr}, {"[-0x1p-10, 0x1p-10]", nullptr}};
      case exp2: return {{"[0, 1]", nullptr}, {"[-1, 0.5]", nullptr}, {"[3]", nullptr}};
      case log:
        return {{"[1]", nullptr}, {"[2, 3]", nullptr}, {"[0.5, 1]", nullptr},
                {"[4]", nullptr}};
      case log2: return {{"[1, 4]", nullptr}, {"[2]", nullptr}, {"[0.5, 0.75]", nullptr}};
      case sin:
        return {{"[0]", nullptr}, {"[1]", nullptr}, {"[0.5, 2]", nullptr},
                {"[-1, 1]", nullptr}, {"[3, 4]", nullptr}};
      case cos:
        return {{"[0]", nullptr}, {"[1, 2]", nullptr}, {"[-0.5, 0.5]", nullptr},
                {"[3]", nullptr}};
      case atanh:
        return {{"[0]", nullptr}, {"[-0.5, 0.5]", nullptr}, {"[0.25, 0.75]", nullptr},
                {"[-0.75, -0.25]", nullptr}};
    }
  }
  if (cat == CaseCategory::special) {
    switch (f) {
      case neg: return {{"[-inf, 0]", nullptr}, {"[entire]", nullptr}};
      case add:
        return {{"[-inf, 1]", "[2, 3]"}, {"[0, inf]", "[-inf, 0]"}, {"[-0, 0]", "[1]"}};
      case sub: return {{"[entire]", "[1]"}, {"[0, inf]", "[0, inf]"}};
      case mul:
        return {{"[0]", "[entire]"}, {"[-inf, 0]", "[-inf, 0]"}, {"[2, inf]", "[3, inf]"}};
      case div:
        return {{"[1, 2]", "[0]"}, {"[1]", "[0, 1]"}, {"[-1, 1]", "[-1, 1]"},
                {"[1, 2]", "[entire]"}, {"[0]", "[2, 3]"}};
      case sqr: return {{"[-inf, 2]", nullptr}, {"[entire]", nullptr}};
      case sqrt:
        return {{"[-4, -1]", nullptr}, {"[-1, 4]", nullptr}, {"[0, inf]", nullptr},
                {"[4, inf]", nullptr}};
      case cbrt:
        return {{"[-inf, 0]", nullptr}, {"[0, inf]", nullptr}, {"[entire]", nullptr},
                {"[-inf, -8]", nullptr}};
      case exp:
        return {{"[-inf, 0]", nullptr}, {"[0, inf]", nullptr}, {"[entire]", nullptr},
                {"[710]", nullptr}, {"[-0, 0]", nullptr}, {"[-inf, -746]", nullptr}};
      case exp2:
        return {{"[-inf, 0]", nullptr}, {"[1100]", nullptr}, {"[0, inf]", nullptr}};
      case log:
        return {{"[0, 1]", nullptr}, {"[1, inf]", nullptr}, {"[0]", nullptr},
                {"[0, inf]", nullptr}, {"[-0, 1]", nullptr}};
      case log2:
        return {{"[0, 1]", nullptr}, {"[1, inf]", nullptr}, {"[2, inf]", nullptr}};
      case sin:
        return {{"[entire]", nullptr}, {"[0, inf]", nullptr}, {"[-inf, 0]", nullptr},
                {"[1, inf]", nullptr}};
      case cos: return {{"[entire]", nullptr}, {"[0, inf]", nullptr}, {"[-inf, -1]", nullptr}};
      case atanh:
        return {{"[0, 1]", nullptr}, {"[1]", nullptr}, {"[-1]", nullptr},
                {"[-1, 0]", nullptr}, {"[-1, 1]", nullptr}, {"[0.5, 1]", nullptr},
                {"[entire]", nullptr}};
    }
  }
  return {};
}

// The invalid constructions whose rejection the exceptional category records.
struct Rejection {
  std::string text;
  std::string rule;
};

std::vector<Rejection> rejections(const Format& fmt) {
  std::vector<Rejection> out;
  auto attempt = [&](const std::string& text, const BigFloat& lo, const BigFloat& hi) {
    try {
      Interval probe(lo, hi);
      throw Error("construction unexpectedly accepted: " + text);
    } catch (const IllFormedError& e) {
      out.push_back({text, e.rule()});
    }
  };
  attempt("[-inf, -inf]", BigFloat::infinity(fmt, -1), BigFloat::infinity(fmt, -1));
  attempt("[2, 1]", BigFloat::from_int64(2, fmt), BigFloat::from_int64(1, fmt));
  attempt("[nan, 1]", BigFloat::quiet_nan(fmt), BigFloat::from_int64(1, fmt));
  return out;
}

}  // namespace

ExpectedOutputs expected_outputs(FunctionId f,
                                 const std::vector<DecoratedInterval>& inputs,
                                 const Format& format) {
  DecoratedInterval tight = eval_decorated(f, inputs, format);
  std::vector<Interval> widened;
  widened.reserve(inputs.size());
  for (const DecoratedInterval& d : inputs) widened.push_back(next_out(d.interval));
  const Interval acc = next_out(eval_interval(f, widened, format));
  Decoration dec = tight.dec;
  if (!acc.is_empty() && (acc.inf().is_inf() || acc.sup().is_inf()) &&
      dec == Decoration::com)
    dec = Decoration::dac;
  return ExpectedOutputs{std::move(tight), decorated(acc, dec)};
}

ExpectedOutputs expected_outputs(FunctionId f, const std::vector<Interval>& inputs,
                                 const Format& format) {
  return expected_outputs(f, with_inferred(inputs), format);
}

std::vector<HardCase> find_hard_cases(FunctionId f, const SearchRange& r, int hardness,
                                      RunFilter filter, const HardSearchOptions& opts) {
  if (hardness < 1) throw Error("hardness must be at least 1");
  if (arity(f) != 1) throw Error("hard-case search takes unary functions");
  check_range(r);
  const std::int64_t p = r.format.precision_bits;
  if (p + hardness + opts.verify_extra > (std::int64_t(1) << 22))
    throw ResourceError("precision + hardness exceeds the working ceiling");

  const BigInt lo = BigFloat::ordinal(r.t0);
  const BigInt hi = BigFloat::ordinal(r.t1);
  const BigInt count = hi - lo + 1;
  if (count > opts.budget)
    throw ResourceError("range holds " + count.str() + " arguments, over the budget of " +
                        BigInt(opts.budget).str() + "; narrow the range");

  const Format wide_target(
      static_cast<int>(std::min<std::int64_t>(p + hardness + 64, std::int64_t(1) << 22)),
      -(std::int64_t(1) << 45), std::int64_t(1) << 45, false);

  auto scan = [&](const BigInt& from, const BigInt& to, std::vector<HardCase>& sink) {
    for (BigInt o = from; o <= to; ++o) {
      const BigFloat x = BigFloat::from_ordinal(o, r.format);
      if (exact_case(f, {x}, wide_target)) continue;
      const RunClass c = resolve_run(f, x, p, hardness, opts.start_extra);
      if (c == RunClass::not_hard) continue;
      if (c == RunClass::zeros && filter == RunFilter::ones) continue;
      if (c == RunClass::ones && filter == RunFilter::zeros) continue;
      // Independent certification at a strictly higher floor.
      if (resolve_run(f, x, p, hardness, opts.verify_extra) != c)
        throw Error("hard-case certification diverged at " + format_hex(x));
      HardCase h;
      h.x = x;
      h.function = f;
      h.hardness = hardness;
      h.run_kind = c == RunClass::zeros ? RunKind::zeros : RunKind::ones;
      h.direction_affected = affected(h.run_kind);
      sink.push_back(std::move(h));
    }
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || count <= 16) {
    std::vector<HardCase> out;
    scan(lo, hi, out);
    return out;
  }
  const BigInt chunk = (count + jobs - 1) / jobs;
  std::vector<std::vector<HardCase>> parts(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (int t = 0; t < jobs; ++t) {
    const BigInt from = lo + chunk * t;
    if (from > hi) break;
    BigInt to = from + chunk - 1;
    if (to > hi) to = hi;
    pool.emplace_back([&, t, from, to] {
      try {
        scan(from, to, parts[static_cast<std::size_t>(t)]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<HardCase> out;
  for (auto& part : parts)
    for (HardCase& h : part) out.push_back(std::move(h));
  return out;
}

std::optional<CaseCategory> category_from_name(std::string_view name) {
  if (name == "easy") return CaseCategory::easy;
  if (name == "special") return CaseCategory::special;
  if (name == "exceptional") return CaseCategory::exceptional;
  return std::nullopt;
}

std::string_view category_name(CaseCategory c) {
  switch (c) {
    case CaseCategory::easy: return "easy";
    case CaseCategory::special: return "special";
    case CaseCategory::exceptional: return "exceptional";
  }
  return "easy";
}

std::vector<TestCase> emit_category_cases(FunctionId f, const Format& format,
                                          CaseCategory category) {
  std::vector<TestCase> out;
  if (category == CaseCategory::exceptional) {
    for (const Rejection& rej : rejections(format)) {
      std::vector<DecoratedInterval> inputs;
      inputs.push_back(nai(format));
      for (int i = 1; i < arity(f); ++i)
        inputs.push_back(decorated(Interval::singleton(BigFloat::from_int64(1, format)),
                                   Decoration::com));
      out.push_back(make_case(f, inputs, format,
                              "construction " + rej.text + " is rejected (" + rej.rule +
                                  "); the resulting ill value propagates"));
    }
    std::vector<DecoratedInterval> inputs;
    inputs.push_back(decorated(Interval::empty(format), Decoration::trv));
    for (int i = 1; i < arity(f); ++i)
      inputs.push_back(decorated(Interval::singleton(BigFloat::from_int64(1, format)),
                                 Decoration::com));
    out.push_back(make_case(f, inputs, format, "the empty set propagates"));
    return out;
  }
  for (const Preset& ps : presets_for(f, category)) {
    std::vector<DecoratedInterval> inputs;
    inputs.push_back(parse_interval_literal(ps.a, format));
    if (arity(f) == 2)
      inputs.push_back(parse_interval_literal(ps.b ? ps.b : "[1]", format));
    out.push_back(make_case(f, inputs, format, std::nullopt));
  }
  return out;
}

TestCase make_case(FunctionId f, const std::vector<DecoratedInterval>& inputs,
                   const Format& format, std::optional<std::string> comment) {
  TestCase c;
  c.function_text = std::string(function_name(f));
  c.function = f;
  c.precision = format.precision_bits;
  if (format == Format::binary64())
    c.format_hint = "binary64";
  else if (format == Format::binary32())
    c.format_hint = "binary32";
  c.format = format;
  for (const DecoratedInterval& d : inputs) c.input.push_back(value_from_decorated(d));
  const ExpectedOutputs eo = expected_outputs(f, inputs, format);
  c.tight = value_from_decorated(eo.tight);
  c.accurate = value_from_decorated(eo.accurate);
  c.comment = std::move(comment);
  return c;
}

TestCase make_case(FunctionId f, const std::vector<Interval>& inputs,
                   const Format& format) {
  return make_case(f, with_inferred(inputs), format, std::nullopt);
}

TestSuite hard_cases_to_suite(const std::vector<HardCase>& cases, const Format& format) {
  TestSuite s;
  for (const HardCase& h : cases) {
    std::string note = std::string(run_kind_name(h.run_kind)) + " run of length >= " +
                       std::to_string(h.hardness) + " after bit " +
                       std::to_string(format.precision_bits) + "; hard for rounding " +
                       (h.run_kind == RunKind::zeros ? "down and toward zero" : "up");
    s.cases.push_back(make_case(
        h.function, {decorated(Interval::singleton(h.x), Decoration::com)}, format,
        std::move(note)));
  }
  return s;
}

std::string hard_cases_metadata_json(FunctionId f, const SearchRange& r, int hardness,
                                     const std::vector<HardCase>& cases) {
  ordered_json j;
  j["function"] = std::string(function_name(f));
  j["precision"] = r.format.precision_bits;
  j["hardness"] = hardness;
  j["range"]["t0"] = format_hex(r.t0);
  j["range"]["t1"] = format_hex(r.t1);
  j["count"] = cases.size();
  j["cases"] = ordered_json::array();
  for (const HardCase& h : cases) {
    ordered_json e;
    e["x"] = format_hex(h.x);
    e["run_kind"] = std::string(run_kind_name(h.run_kind));
    e["hardness"] = h.hardness;
    e["direction_affected"] = ordered_json::array();
    for (RoundingDirection d : h.direction_affected)
      e["direction_affected"].push_back(
          d == RoundingDirection::down ? "down"
          : d == RoundingDirection::up ? "up"
          : d == RoundingDirection::toward_zero ? "toward_zero" : "nearest_even");
    j["cases"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace ivalkit
