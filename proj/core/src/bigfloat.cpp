// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/bigfloat.hpp"

#include <bit>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "ivalkit/errors.hpp"

namespace ivalkit {

namespace {

constexpr std::int64_t kMaxExponentMagnitude = std::int64_t(1) << 46;
constexpr int kMaxPrecision = 1 << 23;

BigInt pow2(std::int64_t n) { return BigInt(1) << static_cast<unsigned>(n); }

bool rounds_away(RoundingDirection dir, bool negative) {
  return (dir == RoundingDirection::up && !negative) ||
         (dir == RoundingDirection::down && negative);
}

}  // namespace

Format::Format(int p, std::int64_t emin_, std::int64_t emax_, bool subnormals_)
    : precision_bits(p), emin(emin_), emax(emax_), subnormals(subnormals_) {
  if (p < 2 || p > kMaxPrecision)
    throw std::invalid_argument("Format: precision_bits out of range");
  if (emin > emax)
    throw std::invalid_argument("Format: emin exceeds emax");
  if (emin < -kMaxExponentMagnitude || emax > kMaxExponentMagnitude)
    throw std::invalid_argument("Format: exponent range exceeds internal limits");
}

BigFloat BigFloat::zero(const Format& f) {
  return BigFloat(ValueClass::zero, false, BigInt(0), 0, f);
}

BigFloat BigFloat::infinity(const Format& f, int sign) {
  return BigFloat(sign < 0 ? ValueClass::neg_inf : ValueClass::pos_inf,
                  sign < 0, BigInt(0), 0, f);
}

BigFloat BigFloat::quiet_nan(const Format& f) {
  return BigFloat(ValueClass::nan, false, BigInt(0), 0, f);
}

BigFloat BigFloat::max_finite(const Format& f) {
  const int p = f.precision_bits;
  return BigFloat(ValueClass::finite, false, pow2(p) - 1, f.emax - p + 1, f);
}

BigFloat BigFloat::min_positive(const Format& f) {
  const int p = f.precision_bits;
  if (f.subnormals)
    return BigFloat(ValueClass::finite, false, BigInt(1), f.emin - p + 1, f);
  return BigFloat(ValueClass::finite, false, pow2(p - 1), f.emin - p + 1, f);
}

int BigFloat::sign() const {
  switch (cls_) {
    case ValueClass::neg_inf: return -1;
    case ValueClass::finite: return negative_ ? -1 : 1;
    default: return 1;
  }
}

std::int64_t BigFloat::exponent() const {
  if (cls_ != ValueClass::finite)
    throw std::invalid_argument("BigFloat::exponent: value is not finite nonzero");
  return lsb_exp_ + bit_length(mant_) - 1;
}

bool BigFloat::is_subnormal() const {
  return cls_ == ValueClass::finite && fmt_.subnormals && exponent() < fmt_.emin;
}

BigFloat BigFloat::make_rounded(bool negative, BigInt mant, std::int64_t lsb_exp,
                                bool sticky, const Format& f, RoundingDirection dir,
                                bool* inexact) {
  if (mant.sign() < 0)
    throw std::invalid_argument("make_rounded: negative magnitude");
  auto set_inexact = [&](bool v) { if (inexact) *inexact = v; };

  if (mant.is_zero()) {
    if (sticky)
      throw std::invalid_argument("make_rounded: sticky with zero magnitude");
    set_inexact(false);
    return zero(f);
  }

  const int p = f.precision_bits;
  const std::int64_t L = bit_length(mant);
  const std::int64_t E = lsb_exp + L - 1;  // leading-bit exponent

  // Magnitudes entirely below the normal range of a format without
  // subnormals round against the two nearest representables: 0 and 2^emin.
  if (!f.subnormals && E < f.emin) {
    set_inexact(true);
    switch (dir) {
      case RoundingDirection::toward_zero:
        return zero(f);
      case RoundingDirection::down:
        return negative ? min_positive(f).negated() : zero(f);
      case RoundingDirection::up:
        return negative ? zero(f) : min_positive(f);
      case RoundingDirection::nearest_even: {
        // Tie point is 2^(emin-1); zero wins ties (even significand).
        if (E < f.emin - 1) return zero(f);
        const bool tie = (mant == pow2(L - 1)) && !sticky;
        if (tie) return zero(f);
        return negative ? min_positive(f).negated() : min_positive(f);
      }
    }
  }

  std::int64_t q_lsb = E - p + 1;
  if (f.subnormals && q_lsb < f.emin - p + 1) q_lsb = f.emin - p + 1;

  const std::int64_t shift = lsb_exp - q_lsb;
  BigInt q, r;
  bool inexact_local = sticky;
  if (shift >= 0) {
    if (sticky)
      throw std::invalid_argument("make_rounded: sticky input coarser than target quantum");
    q = mant << static_cast<unsigned>(shift);
  } else {
    const std::int64_t s = -shift;
    q = mant >> static_cast<unsigned>(s);
    r = mant - (q << static_cast<unsigned>(s));
    if (!r.is_zero()) inexact_local = true;

    bool increment = false;
    switch (dir) {
      case RoundingDirection::toward_zero:
        break;
      case RoundingDirection::down:
        increment = negative && inexact_local;
        break;
      case RoundingDirection::up:
        increment = !negative && inexact_local;
        break;
      case RoundingDirection::nearest_even: {
        const BigInt half = pow2(s - 1);
        if (r > half) increment = true;
        else if (r == half) increment = sticky || boost::multiprecision::bit_test(q, 0);
        break;
      }
    }
    if (increment) ++q;
  }

  set_inexact(inexact_local);
  if (q.is_zero()) return zero(f);

  std::int64_t Lq = bit_length(q);
  if (Lq > p) {  // carry out of the top bit: q == 2^p
    q >>= 1;
    q_lsb += 1;
    Lq = p;
  }

  const std::int64_t E2 = q_lsb + Lq - 1;
  if (E2 > f.emax) {
    set_inexact(true);
    // Directed rounding never crosses the true value: toward-zero directions
    // clamp to max_finite, away-from-zero ones (and nearest, which only
    // lands here past the midpoint above max_finite) saturate to infinity.
    if (rounds_away(dir, negative) || dir == RoundingDirection::nearest_even)
      return infinity(f, negative ? -1 : 1);
    return negative ? max_finite(f).negated() : max_finite(f);
  }

  return BigFloat(ValueClass::finite, negative, std::move(q), q_lsb, f);
}

BigFloat BigFloat::from_int64(std::int64_t v, const Format& f, RoundingDirection dir) {
  if (v == 0) return zero(f);
  BigInt m = v;
  const bool neg = m.sign() < 0;
  if (neg) m = -m;
  return make_rounded(neg, m, 0, false, f, dir);
}

BigFloat BigFloat::from_double(double v, const Format& f, RoundingDirection dir) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  const bool neg = bits >> 63;
  const int be = static_cast<int>((bits >> 52) & 0x7ff);
  const std::uint64_t frac = bits & ((std::uint64_t(1) << 52) - 1);
  if (be == 0x7ff) {
    if (frac != 0) return quiet_nan(f);
    return infinity(f, neg ? -1 : 1);
  }
  BigInt m;
  std::int64_t lsb;
  if (be == 0) {
    if (frac == 0) return zero(f);  // both zeros collapse to the canonical one
    m = frac;
    lsb = -1074;
  } else {
    m = frac | (std::uint64_t(1) << 52);
    lsb = std::int64_t(be) - 1023 - 52;
  }
  return make_rounded(neg, m, lsb, false, f, dir);
}

BigFloat BigFloat::round_to(const Format& f, RoundingDirection dir) const {
  switch (cls_) {
    case ValueClass::zero: return zero(f);
    case ValueClass::pos_inf: return infinity(f, 1);
    case ValueClass::neg_inf: return infinity(f, -1);
    case ValueClass::nan: return quiet_nan(f);
    case ValueClass::finite:
      return make_rounded(negative_, mant_, lsb_exp_, false, f, dir);
  }
  throw std::logic_error("unreachable");
}

BigFloat BigFloat::negated() const {
  switch (cls_) {
    case ValueClass::zero: return *this;
    case ValueClass::pos_inf: return infinity(fmt_, -1);
    case ValueClass::neg_inf: return infinity(fmt_, 1);
    case ValueClass::nan: return *this;
    case ValueClass::finite:
      return BigFloat(ValueClass::finite, !negative_, mant_, lsb_exp_, fmt_);
  }
  throw std::logic_error("unreachable");
}

BigFloat BigFloat::abs() const {
  return sign() < 0 ? negated() : *this;
}

std::partial_ordering compare(const BigFloat& a, const BigFloat& b) {
  using po = std::partial_ordering;
  if (a.is_nan() || b.is_nan()) return po::unordered;
  auto rank = [](const BigFloat& x) {
    switch (x.cls()) {
      case ValueClass::neg_inf: return -2;
      case ValueClass::pos_inf: return 2;
      case ValueClass::zero: return 0;
      default: return x.sign();
    }
  };
  const int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? po::less : po::greater;
  if (ra != -1 && ra != 1) return po::equivalent;  // equal infinities or zeros

  // Both finite nonzero with the same sign: compare magnitudes.
  const std::int64_t Ea = a.exponent(), Eb = b.exponent();
  po mag = po::equivalent;
  if (Ea != Eb) {
    mag = Ea < Eb ? po::less : po::greater;
  } else {
    const std::int64_t d = a.lsb_exponent() - b.lsb_exponent();
    const BigInt& ma = a.significand();
    const BigInt& mb = b.significand();
    int c;
    if (d >= 0) c = BigInt(ma << static_cast<unsigned>(d)).compare(mb);
    else c = ma.compare(BigInt(mb << static_cast<unsigned>(-d)));
    mag = c < 0 ? po::less : (c > 0 ? po::greater : po::equivalent);
  }
  if (ra < 0) {  // negative values order opposite their magnitudes
    if (mag == po::less) return po::greater;
    if (mag == po::greater) return po::less;
  }
  return mag;
}

bool operator==(const BigFloat& a, const BigFloat& b) {
  return compare(a, b) == std::partial_ordering::equivalent;
}

BigInt BigFloat::ordinal(const BigFloat& x) {
  if (!x.is_finite())
    throw std::invalid_argument("ordinal: value is not finite");
  if (x.is_zero()) return BigInt(0);
  const Format& f = x.format();
  const int p = f.precision_bits;
  const BigInt half = pow2(p - 1);
  BigInt o;
  if (x.is_subnormal()) {
    o = x.significand();
  } else {
    const BigInt subcount = f.subnormals ? half - 1 : BigInt(0);
    o = subcount + BigInt(x.exponent() - f.emin) * half +
        (x.significand() - half) + 1;
  }
  return x.sign() < 0 ? BigInt(-o) : o;
}

BigFloat BigFloat::from_ordinal(const BigInt& o, const Format& f) {
  if (o.is_zero()) return zero(f);
  const bool neg = o.sign() < 0;
  BigInt m = neg ? BigInt(-o) : o;
  const int p = f.precision_bits;
  const BigInt half = pow2(p - 1);
  BigFloat r = zero(f);
  if (f.subnormals && m < half) {
    r = BigFloat(ValueClass::finite, false, m, f.emin - p + 1, f);
  } else {
    const BigInt subcount = f.subnormals ? half - 1 : BigInt(0);
    BigInt t = m - subcount - 1;
    BigInt binade = t / half;
    BigInt idx = t % half;
    if (binade > f.emax - f.emin)
      throw std::invalid_argument("from_ordinal: ordinal beyond max_finite");
    const std::int64_t E = f.emin + binade.convert_to<std::int64_t>();
    r = BigFloat(ValueClass::finite, false, half + idx, E - p + 1, f);
  }
  return neg ? r.negated() : r;
}

BigInt BigFloat::max_ordinal(const Format& f) { return ordinal(max_finite(f)); }

BigFloat next(const BigFloat& x, RoundingDirection dir) {
  if (dir != RoundingDirection::up && dir != RoundingDirection::down)
    throw std::invalid_argument("next: direction must be up or down");
  const bool up = dir == RoundingDirection::up;
  switch (x.cls()) {
    case ValueClass::nan:
      return x;
    case ValueClass::pos_inf:
      return up ? x : BigFloat::max_finite(x.format());
    case ValueClass::neg_inf:
      return up ? BigFloat::max_finite(x.format()).negated() : x;
    default: {
      const BigInt o = BigFloat::ordinal(x) + (up ? 1 : -1);
      const BigInt mo = BigFloat::max_ordinal(x.format());
      if (o > mo) return BigFloat::infinity(x.format(), 1);
      if (o < -mo) return BigFloat::infinity(x.format(), -1);
      return BigFloat::from_ordinal(o, x.format());
    }
  }
}

std::string BigFloat::debug_string() const {
  std::ostringstream os;
  switch (cls_) {
    case ValueClass::zero: return "0";
    case ValueClass::pos_inf: return "+inf";
    case ValueClass::neg_inf: return "-inf";
    case ValueClass::nan: return "nan";
    case ValueClass::finite:
      os << (negative_ ? "-" : "") << "0x" << std::hex << mant_ << std::dec
         << "p" << lsb_exp_;
      return os.str();
  }
  return "?";
}

Bracket::Bracket(BigFloat lo_, BigFloat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.is_nan() || hi.is_nan())
    throw std::invalid_argument("Bracket: nan endpoint");
  if (!(lo.format() == hi.format()))
    throw std::invalid_argument("Bracket: mismatched endpoint formats");
  if (compare(lo, hi) == std::partial_ordering::greater)
    throw std::invalid_argument("Bracket: lo exceeds hi");
}

namespace {

// Exact signed fixed-point view of a finite BigFloat, (value = m * 2^lsb).
struct Scaled {
  BigInt m;  // signed
  std::int64_t lsb;
};

Scaled scaled_of(const BigFloat& x) {
  Scaled s{x.significand(), x.lsb_exponent()};
  if (x.sign() < 0) s.m = -s.m;
  return s;
}

BigFloat round_scaled(const BigInt& v, std::int64_t lsb, const Format& f,
                      RoundingDirection dir) {
  if (v.is_zero()) return BigFloat::zero(f);
  const bool neg = v.sign() < 0;
  return BigFloat::make_rounded(neg, neg ? BigInt(-v) : v, lsb, false, f, dir);
}

BigFloat add_finite(const BigFloat& x, const BigFloat& y, const Format& f,
                    RoundingDirection dir) {
  if (x.is_zero()) return y.round_to(f, dir);
  if (y.is_zero()) return x.round_to(f, dir);

  const BigFloat& big = compare(x.abs(), y.abs()) != std::partial_ordering::less ? x : y;
  const BigFloat& small = (&big == &x) ? y : x;

  // When the smaller operand lies entirely below the rounding window of the
  // larger one its only effect is a sticky nudge; this keeps alignment
  // shifts proportional to the operand and target sizes.
  const std::int64_t window = f.precision_bits + 8;
  if (small.exponent() + window + 4 < big.lsb_exponent()) {
    const std::int64_t g = window + 2;
    BigInt m = big.significand() << static_cast<unsigned>(g);
    const bool same_sign = big.sign() == small.sign();
    if (!same_sign) m -= 1;
    return BigFloat::make_rounded(big.sign() < 0, m,
                                  big.lsb_exponent() - g, true, f, dir);
  }

  const Scaled a = scaled_of(x), b = scaled_of(y);
  const std::int64_t common = std::min(a.lsb, b.lsb);
  const BigInt v = (a.m << static_cast<unsigned>(a.lsb - common)) +
                   (b.m << static_cast<unsigned>(b.lsb - common));
  return round_scaled(v, common, f, dir);
}

BigFloat div_finite(const BigFloat& x, const BigFloat& y, const Format& f,
                    RoundingDirection dir) {
  const bool neg = (x.sign() < 0) != (y.sign() < 0);
  const BigInt& mx = x.significand();
  const BigInt& my = y.significand();
  const std::int64_t L1 = bit_length(mx), L2 = bit_length(my);
  const std::int64_t k = std::max<std::int64_t>(0, f.precision_bits + 4 - (L1 - L2));
  BigInt q, r;
  boost::multiprecision::divide_qr(mx << static_cast<unsigned>(k), my, q, r);
  const std::int64_t e = x.lsb_exponent() - y.lsb_exponent() - k;
  if (r.is_zero())
    return BigFloat::make_rounded(neg, std::move(q), e, false, f, dir);
  // Quotient strictly between q and q+1: round the half-unit surrogate, which
  // lands in the same rounding cell because q carries >= p+2 bits.
  return BigFloat::make_rounded(neg, (q << 1) + 1, e - 1, true, f, dir);
}

}  // namespace

BigFloat arith(ArithOp op, const BigFloat& x, const BigFloat& y,
               const Format& f, RoundingDirection dir) {
  if (x.is_nan() || y.is_nan()) return BigFloat::quiet_nan(f);

  switch (op) {
    case ArithOp::sub:
      return arith(ArithOp::add, x, y.negated(), f, dir);

    case ArithOp::add: {
      if (x.is_inf() || y.is_inf()) {
        if (x.is_inf() && y.is_inf()) {
          if (x.sign() != y.sign()) return BigFloat::quiet_nan(f);
          return BigFloat::infinity(f, x.sign());
        }
        return BigFloat::infinity(f, x.is_inf() ? x.sign() : y.sign());
      }
      return add_finite(x, y, f, dir);
    }

    case ArithOp::mul: {
      if (x.is_zero() || y.is_zero()) {
        if (x.is_inf() || y.is_inf()) return BigFloat::quiet_nan(f);
        return BigFloat::zero(f);
      }
      const int s = x.sign() * y.sign();
      if (x.is_inf() || y.is_inf()) return BigFloat::infinity(f, s);
      return BigFloat::make_rounded(s < 0, x.significand() * y.significand(),
                                    x.lsb_exponent() + y.lsb_exponent(),
                                    false, f, dir);
    }

    case ArithOp::div: {
      if (y.is_zero()) return BigFloat::quiet_nan(f);  // no signed zero to orient x/0
      if (x.is_zero()) return BigFloat::zero(f);
      const int s = x.sign() * y.sign();
      if (x.is_inf()) {
        if (y.is_inf()) return BigFloat::quiet_nan(f);
        return BigFloat::infinity(f, s);
      }
      if (y.is_inf()) return BigFloat::zero(f);
      return div_finite(x, y, f, dir);
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<BigFloat> round_from_bracket(const Bracket& b, const Format& target,
                                           RoundingDirection dir) {
  if (b.lo.is_nan() || b.hi.is_nan())
    throw Error("round_from_bracket: nan in bracket");
  const BigFloat lo = b.lo.round_to(target, dir);
  const BigFloat hi = b.hi.round_to(target, dir);
  if (lo.cls() == hi.cls() && lo == hi) return lo;
  // Distinct zero classes can't occur (single canonical zero); any value
  // disagreement means the bracket straddles a rounding boundary.
  return std::nullopt;
}

}  // namespace ivalkit
