// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ivalkit/bigfloat.hpp"
#include "ivalkit/pointfuncs.hpp"

namespace ivalkit {

// Set-based interval over the reals with endpoints in one Format. A nonempty
// interval denotes {x real : inf <= x <= sup}; endpoints are bounds, not
// members, so infinite endpoints encode unboundedness. Invariants: inf <= sup,
// inf != +inf, sup != -inf, no nan endpoints, both endpoints share the format.
class Interval {
 public:
  static Interval empty(const Format& f);
  static Interval entire(const Format& f);
  static Interval singleton(const BigFloat& x);

  // Checked endpoint constructor; throws IllFormedError naming the violated
  // rule ("nan-endpoint", "reversed-bounds", "inf-is-plus-infinity",
  // "sup-is-minus-infinity", "format-mismatch").
  Interval(BigFloat inf, BigFloat sup);

  bool is_empty() const { return empty_; }
  bool is_entire() const;

  // Endpoint accessors require a nonempty interval.
  const BigFloat& inf() const;
  const BigFloat& sup() const;
  const Format& format() const { return fmt_; }

 private:
  explicit Interval(const Format& f) : empty_(true), fmt_(f) {}

  bool empty_;
  BigFloat inf_, sup_;
  Format fmt_;
};

// Decoration values, strongest to weakest: com > dac > def > trv > ill.
// Enumerator order makes the built-in comparisons agree with that ranking.
enum class Decoration { ill, trv, def, dac, com };

std::string_view decoration_name(Decoration d);
std::optional<Decoration> decoration_from_name(std::string_view name);

// Interval plus decoration. Invariants: empty implies dec in {trv, ill};
// an unbounded interval cannot carry com; ill implies empty (NaI).
struct DecoratedInterval {
  Interval interval;
  Decoration dec;
};

// Checked builder for the invariants above; throws IllFormedError with rules
// "empty-needs-trv-or-ill", "unbounded-cannot-be-com", "ill-needs-empty".
DecoratedInterval decorated(Interval x, Decoration dec);
DecoratedInterval nai(const Format& f);

// Builds [lo, hi] in f. BigFloat endpoints are coerced outward (lo down,
// hi up) when f cannot hold them exactly; text endpoints go through
// parse_number with the same outward directions. Validity rules as the
// Interval constructor; "nan" text is rejected.
Interval construct(const BigFloat& lo, const BigFloat& hi, const Format& f);
Interval construct(std::string_view lo, std::string_view hi, const Format& f);

// Tightest f-representable interval enclosing the image of the inputs,
// restricted to the function's domain first: empty inputs or an empty domain
// intersection give empty, points where the function diverges contribute
// infinite endpoints (atanh([0,1]) = [0, +inf]), and a divisor interval
// containing zero yields the hull of the quotient set. Monotone pieces
// evaluate eval_correctly_rounded at the endpoints; sin/cos locate enclosed
// extrema by quadrant counting against pi_enclosure at escalating precision.
Interval eval_interval(FunctionId f, const std::vector<Interval>& inputs,
                       const Format& format);

// Bare part as eval_interval; decoration = min over the inputs and the local
// decoration of this evaluation (com when a bounded nonempty input set lies
// in the domain interior and the result is bounded, dac when it lies in the
// domain, def when only containment short of nonemptiness holds, else trv).
// Any ill input gives NaI.
DecoratedInterval eval_decorated(FunctionId f,
                                 const std::vector<DecoratedInterval>& inputs,
                                 const Format& format);

// Endpoint-wise outward step: [next(inf, down), next(sup, up)], leaving
// infinite endpoints alone; empty stays empty.
Interval next_out(const Interval& x);

enum class NumericFn { inf, sup, mid, rad, wid, mag, mig };

// Numeric views of an interval, in the interval's format. Empty input gives
// nan for every fn. mid rounds the exact midpoint to nearest, with
// mid(entire) = 0 and half-unbounded inputs clamped to +-max_finite; rad is
// the smallest representable r with [mid - r, mid + r] covering x; wid rounds
// sup - inf upward; mag/mig are the extremes of |x| over the set.
BigFloat numeric(NumericFn fn, const Interval& x);

// Exact set operations; both arguments must share a format.
Interval intersection(const Interval& x, const Interval& y);
Interval convex_hull(const Interval& x, const Interval& y);

// Set predicates. Comparisons are value-level, so formats may differ.
// Infinities and nan are never members.
bool equal(const Interval& x, const Interval& y);
bool subset(const Interval& x, const Interval& y);    // x subset of y
bool interior(const Interval& x, const Interval& y);  // x in interior of y
bool disjoint(const Interval& x, const Interval& y);
bool member(const BigFloat& t, const Interval& x);

// Literal grammar: "[l,u]", "[x]" (point), "[]" / "[empty]", "[entire]",
// each with an optional "_dec" suffix. Numeric endpoints follow the
// parse_number grammar and round outward, so the parsed interval encloses the
// textual one. Without a suffix the decoration is com for nonempty bounded,
// dac for unbounded, trv for empty. Throws ParseError for grammar violations
// and IllFormedError for bound or decoration rule violations.
DecoratedInterval parse_interval_literal(std::string_view text, const Format& f);

// Canonical text: "[empty]", "[entire]", or "[" lo ", " hi "]" with
// format_hex endpoints; the decorated overload always appends "_dec".
// parse_interval_literal inverts both forms bit-exactly.
std::string format_interval(const Interval& x);
std::string format_interval(const DecoratedInterval& x);

}  // namespace ivalkit
