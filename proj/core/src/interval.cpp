// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/interval.hpp"

#include <cassert>
#include <cctype>
#include <stdexcept>
#include <utility>

#include "ivalkit/errors.hpp"
#include "ivalkit/hexfloat.hpp"

namespace ivalkit {
namespace {

using RD = RoundingDirection;

// Internal format for order tests and quadrant brackets: wide exponent range
// so directed rounding never clamps values coming from a public format.
Format work_format(std::int64_t q) {
  const std::int64_t r = std::int64_t(1) << 45;
  return Format(static_cast<int>(q), -r, r, false);
}

bool same_format(const Format& a, const Format& b) {
  return a.precision_bits == b.precision_bits && a.emin == b.emin &&
         a.emax == b.emax && a.subnormals == b.subnormals;
}

bool lt(const BigFloat& a, const BigFloat& b) {
  return compare(a, b) == std::partial_ordering::less;
}

const BigFloat& bf_min(const BigFloat& a, const BigFloat& b) { return lt(b, a) ? b : a; }
const BigFloat& bf_max(const BigFloat& a, const BigFloat& b) { return lt(a, b) ? b : a; }

BigFloat small_int(std::int64_t v) { return BigFloat::from_int64(v, Format::wide(8)); }

bool is_neg(const BigFloat& v) { return lt(v, small_int(0)); }
bool is_pos(const BigFloat& v) { return lt(small_int(0), v); }

BigFloat cr1(FunctionId f, const BigFloat& x, const Format& t, RD d) {
  return eval_correctly_rounded(f, {x}, t, d, escalation_for({x}, t));
}

// Endpoint product with the set-based convention 0 * inf = 0: a zero factor
// means the exact product over that corner of the box is zero.
BigFloat mul_ep(const BigFloat& a, const BigFloat& b, const Format& t, RD d) {
  if (a.is_zero() || b.is_zero()) return BigFloat::zero(t);
  return arith(ArithOp::mul, a, b, t, d);
}

Interval do_add(const Interval& x, const Interval& y, const Format& t) {
  return Interval(arith(ArithOp::add, x.inf(), y.inf(), t, RD::down),
                  arith(ArithOp::add, x.sup(), y.sup(), t, RD::up));
}

Interval do_sub(const Interval& x, const Interval& y, const Format& t) {
  return Interval(arith(ArithOp::sub, x.inf(), y.sup(), t, RD::down),
                  arith(ArithOp::sub, x.sup(), y.inf(), t, RD::up));
}

Interval do_mul(const Interval& x, const Interval& y, const Format& t) {
  const BigFloat* xs[2] = {&x.inf(), &x.sup()};
  const BigFloat* ys[2] = {&y.inf(), &y.sup()};
  BigFloat lo, hi;
  bool first = true;
  for (const BigFloat* a : xs) {
    for (const BigFloat* b : ys) {
      BigFloat dn = mul_ep(*a, *b, t, RD::down);
      BigFloat up = mul_ep(*a, *b, t, RD::up);
      lo = first ? dn : bf_min(lo, dn);
      hi = first ? up : bf_max(hi, up);
      first = false;
    }
  }
  return Interval(lo, hi);
}

// Quotient hull. The denominator is restricted to y \ {0}; sign-directed
// endpoint selection keeps indeterminate forms (0/0, inf/inf) out of arith.
Interval do_div(const Interval& x, const Interval& y, const Format& t) {
  if (y.inf().is_zero() && y.sup().is_zero()) return Interval::empty(t);
  if (x.inf().is_zero() && x.sup().is_zero())
    return Interval::singleton(BigFloat::zero(t));

  if (is_pos(y.inf())) {
    BigFloat lo = !is_neg(x.inf())
                      ? arith(ArithOp::div, x.inf(), y.sup(), t, RD::down)
                      : arith(ArithOp::div, x.inf(), y.inf(), t, RD::down);
    BigFloat hi = !is_neg(x.sup())
                      ? arith(ArithOp::div, x.sup(), y.inf(), t, RD::up)
                      : arith(ArithOp::div, x.sup(), y.sup(), t, RD::up);
    return Interval(lo, hi);
  }
  if (is_neg(y.sup())) {
    BigFloat lo = !is_neg(x.sup())
                      ? arith(ArithOp::div, x.sup(), y.sup(), t, RD::down)
                      : arith(ArithOp::div, x.sup(), y.inf(), t, RD::down);
    BigFloat hi = !is_neg(x.inf())
                      ? arith(ArithOp::div, x.inf(), y.inf(), t, RD::up)
                      : arith(ArithOp::div, x.inf(), y.sup(), t, RD::up);
    return Interval(lo, hi);
  }

  // Zero is an interior or endpoint value of y; quotients escape to whichever
  // signed infinity the numerator's sign reaches across it.
  const bool yn = is_neg(y.inf());
  const bool yp = is_pos(y.sup());
  BigFloat lo, hi;
  if ((is_neg(x.inf()) && yp) || (is_pos(x.sup()) && yn)) {
    lo = BigFloat::infinity(t, -1);
  } else if (yp) {  // y = [0, pos], x >= 0
    lo = arith(ArithOp::div, x.inf(), y.sup(), t, RD::down);
  } else {  // y = [neg, 0], x <= 0
    lo = arith(ArithOp::div, x.sup(), y.inf(), t, RD::down);
  }
  if ((is_pos(x.sup()) && yp) || (is_neg(x.inf()) && yn)) {
    hi = BigFloat::infinity(t, +1);
  } else if (yp) {  // y = [0, pos], x <= 0
    hi = arith(ArithOp::div, x.sup(), y.sup(), t, RD::up);
  } else {  // y = [neg, 0], x >= 0
    hi = arith(ArithOp::div, x.inf(), y.inf(), t, RD::up);
  }
  return Interval(lo, hi);
}

Interval do_sqr(const Interval& x, const Format& t) {
  BigFloat a = arith(ArithOp::mul, x.inf(), x.inf(), t, RD::up);
  BigFloat b = arith(ArithOp::mul, x.sup(), x.sup(), t, RD::up);
  BigFloat hi = bf_max(a, b);
  BigFloat lo;
  if (!is_pos(x.inf()) && !is_neg(x.sup())) {
    lo = BigFloat::zero(t);
  } else {
    lo = bf_min(arith(ArithOp::mul, x.inf(), x.inf(), t, RD::down),
                arith(ArithOp::mul, x.sup(), x.sup(), t, RD::down));
  }
  return Interval(lo, hi);
}

// Integer floor of a finite value.
BigInt floor_of(const BigFloat& v) {
  if (v.is_zero()) return BigInt(0);
  const BigInt& m = v.significand();
  std::int64_t l = v.lsb_exponent();
  if (l >= 0) {
    BigInt r = m << static_cast<unsigned>(l);
    return v.sign() < 0 ? BigInt(-r) : r;
  }
  const unsigned s = static_cast<unsigned>(-l);
  BigInt q = m >> s;
  if (v.sign() > 0) return q;
  return BigInt(m - (q << s)) == 0 ? BigInt(-q) : BigInt(-(q + 1));
}

BigInt ceil_of(const BigFloat& v) { return -floor_of(v.negated()); }

// Integer range [ca, fb] of quadrant indices m with lo_ep <= m*pi/2 <= hi_ep:
// ca = ceil(2*lo_ep/pi), fb = floor(2*hi_ep/pi), resolved against nested pi
// enclosures at doubling precision. Nonzero dyadic endpoints make 2x/pi
// irrational, so each floor/ceil becomes unambiguous at a finite precision.
std::pair<BigInt, BigInt> quadrant_range(const BigFloat& lo_ep,
                                         const BigFloat& hi_ep) {
  for (std::int64_t q = 64; q <= (std::int64_t(1) << 19); q *= 2) {
    const Bracket pi = pi_enclosure(q);
    const Format wf = work_format(q);
    const BigFloat two = small_int(2);
    auto bound = [&](const BigFloat& e, bool lower) {
      const RD d = lower ? RD::down : RD::up;
      BigFloat e2 = arith(ArithOp::mul, e, two, wf, d);
      const BigFloat& den = ((e.sign() > 0) == lower) ? pi.hi : pi.lo;
      return arith(ArithOp::div, e2, den, wf, d);
    };
    std::optional<BigInt> ca, fb;
    if (lo_ep.is_zero()) {
      ca = BigInt(0);
    } else {
      BigInt c1 = ceil_of(bound(lo_ep, true));
      BigInt c2 = ceil_of(bound(lo_ep, false));
      if (c1 == c2) ca = c1;
    }
    if (hi_ep.is_zero()) {
      fb = BigInt(0);
    } else {
      BigInt f1 = floor_of(bound(hi_ep, true));
      BigInt f2 = floor_of(bound(hi_ep, false));
      if (f1 == f2) fb = f1;
    }
    if (ca && fb) return {std::move(*ca), std::move(*fb)};
  }
  throw ResourceError(
      "sin/cos quadrant location exceeded the working-precision ceiling");
}

bool range_has_mod4(const BigInt& ca, const BigInt& fb, int r) {
  if (fb < ca) return false;
  if (fb - ca >= 3) return true;
  for (BigInt m = ca; m <= fb; ++m) {
    if (static_cast<int>(((m % 4) + 4) % 4) == r) return true;
  }
  return false;
}

Interval do_trig(FunctionId f, const Interval& x, const Format& t) {
  const bool want_sin = f == FunctionId::sin;
  const BigFloat one = BigFloat::from_int64(1, t);
  const BigFloat mone = one.negated();
  if (x.inf().is_inf() || x.sup().is_inf()) return Interval(mone, one);
  // Width 7 exceeds a full period, so both extrema are inside for sure; the
  // down rounding keeps narrower intervals on the exact quadrant path.
  BigFloat w = arith(ArithOp::sub, x.sup(), x.inf(), work_format(64), RD::down);
  if (!lt(w, small_int(7))) return Interval(mone, one);

  auto [ca, fb] = quadrant_range(x.inf(), x.sup());
  // Quadrant index m hits a maximum where m mod 4 is 1 (sin) or 0 (cos), and
  // a minimum two quadrants later.
  const int max_r = want_sin ? 1 : 0;
  const int min_r = want_sin ? 3 : 2;
  BigFloat hi = range_has_mod4(ca, fb, max_r)
                    ? one
                    : bf_max(cr1(f, x.inf(), t, RD::up), cr1(f, x.sup(), t, RD::up));
  BigFloat lo = range_has_mod4(ca, fb, min_r)
                    ? mone
                    : bf_min(cr1(f, x.inf(), t, RD::down),
                             cr1(f, x.sup(), t, RD::down));
  return Interval(lo, hi);
}

Interval do_sqrt(const Interval& x, const Format& t) {
  if (is_neg(x.sup())) return Interval::empty(t);
  const BigFloat lo_arg =
      is_neg(x.inf()) ? BigFloat::zero(x.format()) : x.inf();
  return Interval(cr1(FunctionId::sqrt, lo_arg, t, RD::down),
                  cr1(FunctionId::sqrt, x.sup(), t, RD::up));
}

Interval do_log(FunctionId f, const Interval& x, const Format& t) {
  if (!is_pos(x.sup())) return Interval::empty(t);
  BigFloat lo = !is_pos(x.inf()) ? BigFloat::infinity(t, -1)
                                 : cr1(f, x.inf(), t, RD::down);
  return Interval(std::move(lo), cr1(f, x.sup(), t, RD::up));
}

Interval do_atanh(const Interval& x, const Format& t) {
  const BigFloat one = small_int(1);
  const BigFloat mone = small_int(-1);
  if (!lt(mone, x.sup()) || !lt(x.inf(), one)) return Interval::empty(t);
  BigFloat lo = !lt(mone, x.inf()) ? BigFloat::infinity(t, -1)
                                   : cr1(FunctionId::atanh, x.inf(), t, RD::down);
  BigFloat hi = !lt(x.sup(), one) ? BigFloat::infinity(t, +1)
                                  : cr1(FunctionId::atanh, x.sup(), t, RD::up);
  return Interval(std::move(lo), std::move(hi));
}

// Monotone increasing on all of R, with limits at the infinities.
Interval do_monotone(FunctionId f, const Interval& x, const Format& t) {
  return Interval(cr1(f, x.inf(), t, RD::down), cr1(f, x.sup(), t, RD::up));
}

// True when every point of x lies in d (interior_only: in d's interior).
// Endpoint infinities denote unboundedness, which only an unbounded side of
// the domain absorbs.
bool interval_in_domain(const Interval& x, const DomainSpec& d,
                        bool interior_only) {
  if (x.is_empty()) return true;
  if (d.excludes_zero && member(small_int(0), x)) return false;
  if (d.lo) {
    if (x.inf().is_inf()) return false;
    const BigFloat b = small_int(*d.lo);
    const bool strict = d.lo_open || interior_only;
    if (strict ? !lt(b, x.inf()) : lt(x.inf(), b)) return false;
  }
  if (d.hi) {
    if (x.sup().is_inf()) return false;
    const BigFloat b = small_int(*d.hi);
    const bool strict = d.hi_open || interior_only;
    if (strict ? !lt(x.sup(), b) : lt(b, x.sup())) return false;
  }
  return true;
}

// Nearest rounding of the exact midpoint (a + b) / 2 of two finite values,
// resolved Ziv-style: once the working precision reaches the span of the
// exact sum the bracket collapses and rounding always resolves.
BigFloat midpoint_nearest(const BigFloat& a, const BigFloat& b,
                          const Format& f) {
  for (std::int64_t q = 64; q <= (std::int64_t(1) << 23); q *= 2) {
    const Format wf = work_format(q);
    auto halve = [](const BigFloat& v) {
      if (v.is_zero()) return v;
      return BigFloat::make_rounded(v.sign() < 0, v.significand(),
                                    v.lsb_exponent() - 1, false, v.format(),
                                    RD::toward_zero);
    };
    Bracket mid{halve(arith(ArithOp::add, a, b, wf, RD::down)),
                halve(arith(ArithOp::add, a, b, wf, RD::up))};
    if (auto r = round_from_bracket(mid, f, RD::nearest_even)) return *r;
  }
  throw ResourceError("midpoint exceeded the working-precision ceiling");
}

}  // namespace

Interval Interval::empty(const Format& f) { return Interval(f); }

Interval Interval::entire(const Format& f) {
  return Interval(BigFloat::infinity(f, -1), BigFloat::infinity(f, +1));
}

Interval Interval::singleton(const BigFloat& x) { return Interval(x, x); }

Interval::Interval(BigFloat inf, BigFloat sup)
    : empty_(false), inf_(std::move(inf)), sup_(std::move(sup)), fmt_(inf_.format()) {
  if (inf_.is_nan() || sup_.is_nan())
    throw IllFormedError("interval endpoint is nan", "nan-endpoint");
  if (!same_format(inf_.format(), sup_.format()))
    throw IllFormedError("interval endpoints disagree on format", "format-mismatch");
  if (inf_.is_inf() && inf_.sign() > 0)
    throw IllFormedError("lower bound is +inf", "inf-is-plus-infinity");
  if (sup_.is_inf() && sup_.sign() < 0)
    throw IllFormedError("upper bound is -inf", "sup-is-minus-infinity");
  if (lt(sup_, inf_))
    throw IllFormedError("lower bound exceeds upper bound", "reversed-bounds");
}

bool Interval::is_entire() const {
  return !empty_ && inf_.is_inf() && sup_.is_inf();
}

const BigFloat& Interval::inf() const {
  assert(!empty_);
  return inf_;
}

const BigFloat& Interval::sup() const {
  assert(!empty_);
  return sup_;
}

std::string_view decoration_name(Decoration d) {
  switch (d) {
    case Decoration::com: return "com";
    case Decoration::dac: return "dac";
    case Decoration::def: return "def";
    case Decoration::trv: return "trv";
    case Decoration::ill: return "ill";
  }
  return "trv";
}

std::optional<Decoration> decoration_from_name(std::string_view name) {
  if (name == "com") return Decoration::com;
  if (name == "dac") return Decoration::dac;
  if (name == "def") return Decoration::def;
  if (name == "trv") return Decoration::trv;
  if (name == "ill") return Decoration::ill;
  return std::nullopt;
}

DecoratedInterval decorated(Interval x, Decoration dec) {
  if (x.is_empty() && dec != Decoration::trv && dec != Decoration::ill)
    throw IllFormedError("empty interval requires decoration trv or ill",
                         "empty-needs-trv-or-ill");
  if (!x.is_empty() && dec == Decoration::ill)
    throw IllFormedError("ill requires the empty interval", "ill-needs-empty");
  if (!x.is_empty() && dec == Decoration::com &&
      (x.inf().is_inf() || x.sup().is_inf()))
    throw IllFormedError("unbounded interval cannot carry com",
                         "unbounded-cannot-be-com");
  return DecoratedInterval{std::move(x), dec};
}

DecoratedInterval nai(const Format& f) {
  return DecoratedInterval{Interval::empty(f), Decoration::ill};
}

Interval construct(const BigFloat& lo, const BigFloat& hi, const Format& f) {
  if (lo.is_nan() || hi.is_nan())
    throw IllFormedError("interval endpoint is nan", "nan-endpoint");
  if (lt(hi, lo))
    throw IllFormedError("lower bound exceeds upper bound", "reversed-bounds");
  return Interval(lo.round_to(f, RD::down), hi.round_to(f, RD::up));
}

namespace {

// Order test for numeric endpoint literals that need not be exact in the
// target format: shrinking parse windows decide every pair whose values
// differ; pairs still ambiguous at the ceiling construct as their hull.
bool text_reversed(std::string_view lo, std::string_view hi) {
  for (std::int64_t q = 128; q <= 65536; q *= 2) {
    const Format wf = work_format(q);
    const BigFloat ldn = parse_number(lo, wf, RD::down);
    const BigFloat lup = parse_number(lo, wf, RD::up);
    const BigFloat udn = parse_number(hi, wf, RD::down);
    const BigFloat uup = parse_number(hi, wf, RD::up);
    if (lt(uup, ldn)) return true;
    if (!lt(udn, lup)) return false;
  }
  return false;
}

}  // namespace

Interval construct(std::string_view lo, std::string_view hi, const Format& f) {
  const BigFloat L = parse_number(lo, f, RD::down);
  const BigFloat U = parse_number(hi, f, RD::up);
  if (L.is_nan() || U.is_nan())
    throw IllFormedError("interval endpoint is nan", "nan-endpoint");
  if (text_reversed(lo, hi))
    throw IllFormedError("lower bound exceeds upper bound", "reversed-bounds");
  return Interval(L, U);
}

Interval eval_interval(FunctionId f, const std::vector<Interval>& inputs,
                       const Format& format) {
  if (static_cast<int>(inputs.size()) != arity(f))
    throw std::invalid_argument("eval_interval: arity mismatch");
  for (const Interval& x : inputs)
    if (x.is_empty()) return Interval::empty(format);

  const Interval& x = inputs[0];
  switch (f) {
    case FunctionId::neg:
      return Interval(x.sup().negated().round_to(format, RD::down),
                      x.inf().negated().round_to(format, RD::up));
    case FunctionId::add: return do_add(x, inputs[1], format);
    case FunctionId::sub: return do_sub(x, inputs[1], format);
    case FunctionId::mul: return do_mul(x, inputs[1], format);
    case FunctionId::div: return do_div(x, inputs[1], format);
    case FunctionId::sqr: return do_sqr(x, format);
    case FunctionId::sqrt: return do_sqrt(x, format);
    case FunctionId::cbrt:
    case FunctionId::exp:
    case FunctionId::exp2: return do_monotone(f, x, format);
    case FunctionId::log:
    case FunctionId::log2: return do_log(f, x, format);
    case FunctionId::sin:
    case FunctionId::cos: return do_trig(f, x, format);
    case FunctionId::atanh: return do_atanh(x, format);
  }
  throw std::invalid_argument("eval_interval: unknown function");
}

DecoratedInterval eval_decorated(FunctionId f,
                                 const std::vector<DecoratedInterval>& inputs,
                                 const Format& format) {
  if (static_cast<int>(inputs.size()) != arity(f))
    throw std::invalid_argument("eval_decorated: arity mismatch");
  for (const DecoratedInterval& d : inputs)
    if (d.dec == Decoration::ill) return nai(format);

  std::vector<Interval> bare;
  bare.reserve(inputs.size());
  for (const DecoratedInterval& d : inputs) bare.push_back(d.interval);
  Interval r = eval_interval(f, bare, format);

  bool all_def = true, all_nonempty = true, all_interior = true,
       all_bounded = true;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Interval& x = bare[i];
    const DomainSpec ds = domain_of(f, static_cast<int>(i));
    all_def = all_def && interval_in_domain(x, ds, false);
    all_interior = all_interior && interval_in_domain(x, ds, true);
    if (x.is_empty()) {
      all_nonempty = false;
    } else if (x.inf().is_inf() || x.sup().is_inf()) {
      all_bounded = false;
    }
  }
  const bool result_bounded =
      !r.is_empty() && !r.inf().is_inf() && !r.sup().is_inf();

  Decoration local;
  if (all_def && all_nonempty && all_bounded && all_interior && result_bounded)
    local = Decoration::com;
  else if (all_def && all_nonempty)
    local = Decoration::dac;
  else if (all_def)
    local = Decoration::def;
  else
    local = Decoration::trv;

  Decoration dec = local;
  for (const DecoratedInterval& d : inputs) dec = std::min(dec, d.dec);
  if (r.is_empty() && dec > Decoration::trv) dec = Decoration::trv;
  return DecoratedInterval{std::move(r), dec};
}

Interval next_out(const Interval& x) {
  if (x.is_empty()) return x;
  BigFloat lo = x.inf().is_inf() ? x.inf() : next(x.inf(), RD::down);
  BigFloat hi = x.sup().is_inf() ? x.sup() : next(x.sup(), RD::up);
  return Interval(std::move(lo), std::move(hi));
}

BigFloat numeric(NumericFn fn, const Interval& x) {
  const Format& f = x.format();
  if (x.is_empty()) return BigFloat::quiet_nan(f);
  switch (fn) {
    case NumericFn::inf: return x.inf();
    case NumericFn::sup: return x.sup();
    case NumericFn::mid: {
      const bool li = x.inf().is_inf(), hi = x.sup().is_inf();
      if (li && hi) return BigFloat::zero(f);
      if (li) return BigFloat::max_finite(f).negated();
      if (hi) return BigFloat::max_finite(f);
      if (x.inf() == x.sup()) return x.inf();
      return midpoint_nearest(x.inf(), x.sup(), f);
    }
    case NumericFn::rad: {
      const BigFloat m = numeric(NumericFn::mid, x);
      return bf_max(arith(ArithOp::sub, m, x.inf(), f, RD::up),
                    arith(ArithOp::sub, x.sup(), m, f, RD::up));
    }
    case NumericFn::wid:
      return arith(ArithOp::sub, x.sup(), x.inf(), f, RD::up);
    case NumericFn::mag: return bf_max(x.inf().abs(), x.sup().abs());
    case NumericFn::mig:
      if (!is_pos(x.inf()) && !is_neg(x.sup())) return BigFloat::zero(f);
      return bf_min(x.inf().abs(), x.sup().abs());
  }
  throw std::invalid_argument("numeric: unknown fn");
}

Interval intersection(const Interval& x, const Interval& y) {
  if (!same_format(x.format(), y.format()))
    throw IllFormedError("interval formats differ", "format-mismatch");
  if (x.is_empty() || y.is_empty()) return Interval::empty(x.format());
  const BigFloat& lo = bf_max(x.inf(), y.inf());
  const BigFloat& hi = bf_min(x.sup(), y.sup());
  if (lt(hi, lo)) return Interval::empty(x.format());
  return Interval(lo, hi);
}

Interval convex_hull(const Interval& x, const Interval& y) {
  if (!same_format(x.format(), y.format()))
    throw IllFormedError("interval formats differ", "format-mismatch");
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  return Interval(bf_min(x.inf(), y.inf()), bf_max(x.sup(), y.sup()));
}

bool equal(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return x.is_empty() && y.is_empty();
  return x.inf() == y.inf() && x.sup() == y.sup();
}

bool subset(const Interval& x, const Interval& y) {
  if (x.is_empty()) return true;
  if (y.is_empty()) return false;
  return !lt(x.inf(), y.inf()) && !lt(y.sup(), x.sup());
}

bool interior(const Interval& x, const Interval& y) {
  if (x.is_empty()) return true;
  if (y.is_empty()) return false;
  const bool lo_ok = lt(y.inf(), x.inf()) || (y.inf().is_inf() && x.inf().is_inf());
  const bool hi_ok = lt(x.sup(), y.sup()) || (y.sup().is_inf() && x.sup().is_inf());
  return lo_ok && hi_ok;
}

bool disjoint(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return true;
  return lt(x.sup(), y.inf()) || lt(y.sup(), x.inf());
}

bool member(const BigFloat& t, const Interval& x) {
  if (t.is_nan() || t.is_inf() || x.is_empty()) return false;
  return !lt(t, x.inf()) && !lt(x.sup(), t);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view s, std::string_view word) {
  if (s.size() != word.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
  return true;
}

}  // namespace

DecoratedInterval parse_interval_literal(std::string_view text,
                                         const Format& f) {
  const std::string_view s = trim(text);
  if (s.empty() || s.front() != '[')
    throw ParseError("expected '[' to open an interval", 0);
  const std::size_t close = s.find(']');
  if (close == std::string_view::npos)
    throw ParseError("unterminated interval", s.size());
  const std::string_view body = trim(s.substr(1, close - 1));
  std::string_view rest = trim(s.substr(close + 1));

  std::optional<Decoration> suffix;
  if (!rest.empty()) {
    if (rest.front() != '_')
      throw ParseError("trailing text after ']'", close + 1);
    const auto d = decoration_from_name(trim(rest.substr(1)));
    if (!d) throw ParseError("unknown decoration suffix", close + 2);
    suffix = *d;
  }

  std::optional<Interval> bare;
  Decoration inferred = Decoration::com;
  if (body.empty() || iequals(body, "empty")) {
    bare = Interval::empty(f);
    inferred = Decoration::trv;
  } else if (iequals(body, "entire")) {
    bare = Interval::entire(f);
    inferred = Decoration::dac;
  } else if (const std::size_t comma = body.find(','); comma != std::string_view::npos) {
    bare = construct(trim(body.substr(0, comma)), trim(body.substr(comma + 1)), f);
  } else {
    const BigFloat lo = parse_number(body, f, RD::down);
    const BigFloat hi = parse_number(body, f, RD::up);
    if (lo.is_nan())
      throw IllFormedError("interval endpoint is nan", "nan-endpoint");
    bare = Interval(lo, hi);
  }
  if (!bare->is_empty() && (bare->inf().is_inf() || bare->sup().is_inf()))
    inferred = Decoration::dac;
  return decorated(std::move(*bare), suffix.value_or(inferred));
}

std::string format_interval(const Interval& x) {
  if (x.is_empty()) return "[empty]";
  if (x.is_entire()) return "[entire]";
  return "[" + format_hex(x.inf()) + ", " + format_hex(x.sup()) + "]";
}

std::string format_interval(const DecoratedInterval& x) {
  return format_interval(x.interval) + "_" +
         std::string(decoration_name(x.dec));
}

}  // namespace ivalkit
