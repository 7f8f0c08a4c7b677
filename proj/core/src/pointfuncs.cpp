// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/pointfuncs.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "ivalkit/errors.hpp"

namespace ivalkit {

namespace {

// Endpoint format for working brackets: the requested significand width with
// an exponent range far beyond any public format, so intermediate magnitudes
// never clamp (exp of an in-range argument stays below 2^(2^45)).
constexpr std::int64_t kBracketRange = std::int64_t(1) << 45;
// Ceiling on the leading exponent of trigonometric arguments; reduction needs
// pi to about that many bits.
constexpr std::int64_t kTrigReductionCap = std::int64_t(1) << 16;

Format bracket_format(std::int64_t q) {
  return Format(static_cast<int>(q), -kBracketRange, kBracketRange, false);
}

BigInt pow2(std::int64_t n) { return BigInt(1) << static_cast<unsigned>(n); }

std::int64_t abs_bits(const BigInt& v) {
  return v < 0 ? bit_length(BigInt(-v)) : bit_length(v);
}

// floor(v / 2^s); s may be negative (an exact left shift).
BigInt floor_shr(const BigInt& v, std::int64_t s) {
  if (s <= 0) return v << static_cast<unsigned>(-s);
  if (v >= 0) return v >> static_cast<unsigned>(s);
  BigInt t = -v;
  BigInt q = t >> static_cast<unsigned>(s);
  if ((t & (pow2(s) - 1)) != 0) ++q;
  return -q;
}

// floor(n / d) for d > 0.
BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q, r;
  boost::multiprecision::divide_qr(n, d, q, r);
  if (r < 0) --q;
  return q;
}

// A fixed-point enclosure: the value lies in [(y-err)*2^-F, (y+err)*2^-F]
// for the precision F the surrounding computation has agreed on.
struct Fx {
  BigInt y;
  BigInt err;  // >= 0
};

// Exact value of x at scale 2^-F, truncating (one unit slack) when x's
// quantum is finer. Shifts act on the magnitude; the sign is applied last.
Fx fx_of(const BigFloat& x, std::int64_t F) {
  if (x.is_zero()) return {BigInt(0), BigInt(0)};
  const std::int64_t sh = x.lsb_exponent() + F;
  BigInt m;
  BigInt err = 0;
  if (sh >= 0) {
    m = x.significand() << static_cast<unsigned>(sh);
  } else {
    m = x.significand() >> static_cast<unsigned>(-sh);
    err = 1;
  }
  if (x.sign() < 0) m = -m;
  return {std::move(m), std::move(err)};
}

Fx fx_mul(const Fx& a, const Fx& b, std::int64_t F) {
  BigInt y = floor_shr(a.y * b.y, F);
  BigInt aa = abs(a.y), ab = abs(b.y);
  BigInt e = aa * b.err + ab * a.err + a.err * b.err;
  return {std::move(y), (e >> static_cast<unsigned>(F)) + 2};
}

// Requires |b.y| > b.err (the divisor enclosure excludes zero).
Fx fx_div(const Fx& a, const Fx& b, std::int64_t F) {
  BigInt by = abs(b.y);
  assert(by > b.err);
  BigInt num = b.y < 0 ? BigInt(-a.y) : a.y;
  BigInt y = floor_div(num * pow2(F), by);
  BigInt en = (a.err * by + abs(a.y) * b.err) * pow2(F);
  BigInt eden = by * (by - b.err);
  return {std::move(y), en / eden + 2};
}

// sum_{n>=0} r^n/n! for |r| <= 0.8 (in value); r at scale 2^-F.
Fx exp_series(const Fx& r, std::int64_t F) {
  Fx term{pow2(F), BigInt(0)};
  Fx sum = term;
  const std::int64_t cap = 10 * F + 1000;
  for (std::int64_t n = 1; n <= cap; ++n) {
    term = fx_mul(term, r, F);
    term.y = floor_div(term.y, BigInt(n));
    term.err = term.err / n + 2;
    sum.y += term.y;
    sum.err += term.err;
    BigInt bound = abs(term.y) + term.err;
    if (bound <= 2) {
      sum.err += 4 * bound + 4;  // geometric tail, ratio <= 0.8
      return sum;
    }
  }
  throw Error("exp series did not converge");
}

// sum_{n>=0} u^n/(2n+1): atanh(x)/x with u = x^2, for 0 <= u <= 0.26.
Fx atanh_ratio_series(const Fx& u, std::int64_t F) {
  Fx pw{pow2(F), BigInt(0)};
  Fx sum = pw;
  const std::int64_t cap = 10 * F + 1000;
  for (std::int64_t n = 1; n <= cap; ++n) {
    pw = fx_mul(pw, u, F);
    BigInt ty = floor_div(pw.y, BigInt(2 * n + 1));
    BigInt te = pw.err / (2 * n + 1) + 2;
    sum.y += ty;
    sum.err += te;
    BigInt bound = abs(ty) + te;
    if (bound <= 2) {
      sum.err += 2 * bound + 4;  // geometric tail, ratio <= 0.26
      return sum;
    }
  }
  throw Error("atanh series did not converge");
}

// Alternating series for cos(r) (u^n/(2n)!) or sin(r)/r (u^n/(2n+1)!) with
// u = r^2 <= 0.7; term magnitudes decrease from n = 1 on.
Fx alt_trig_series(const Fx& u, std::int64_t F, bool cosine) {
  Fx term{pow2(F), BigInt(0)};
  Fx sum = term;
  const std::int64_t cap = 10 * F + 1000;
  for (std::int64_t n = 1; n <= cap; ++n) {
    term = fx_mul(term, u, F);
    std::int64_t d = cosine ? (2 * n - 1) * (2 * n) : (2 * n) * (2 * n + 1);
    term.y = floor_div(term.y, BigInt(d));
    term.err = term.err / d + 2;
    if (n % 2 == 1) sum.y -= term.y; else sum.y += term.y;
    sum.err += term.err;
    BigInt bound = abs(term.y) + term.err;
    if (bound <= 2) {
      sum.err += bound + 2;  // next term bounds the alternating tail
      return sum;
    }
  }
  throw Error("trigonometric series did not converge");
}

// atan(1/m) for a small integer m >= 2, alternating with ratio 1/m^2.
Fx atan_inv(std::int64_t m, std::int64_t F) {
  BigInt m2 = BigInt(m) * m;
  BigInt pw = pow2(F) / m;
  BigInt pe = 1;
  BigInt y = pw, e = pe;
  const std::int64_t cap = 10 * F + 1000;
  for (std::int64_t n = 1; n <= cap; ++n) {
    pw /= m2;
    pe = pe / m2 + 2;
    BigInt ty = pw / (2 * n + 1);
    BigInt te = pe / (2 * n + 1) + 2;
    if (n % 2 == 1) y -= ty; else y += ty;
    e += te;
    if (ty + te <= 2) {
      e += ty + te + 2;
      return {std::move(y), std::move(e)};
    }
  }
  throw Error("arctangent series did not converge");
}

Fx compute_ln2(std::int64_t S) {
  // 2*atanh(1/3), positive terms with ratio 1/9.
  BigInt pw = pow2(S) / 3;
  BigInt pe = 1;
  BigInt y = pw, e = pe;
  const std::int64_t cap = 10 * S + 1000;
  for (std::int64_t n = 1; n <= cap; ++n) {
    pw /= 9;
    pe = pe / 9 + 2;
    BigInt ty = pw / (2 * n + 1);
    BigInt te = pe / (2 * n + 1) + 2;
    y += ty;
    e += te;
    if (ty + te <= 2) {
      y *= 2;
      e = 2 * (e + ty + te + 2) + 4;  // tail, then the doubling, then pad
      return {std::move(y), std::move(e)};
    }
  }
  throw Error("ln2 series did not converge");
}

Fx compute_pi(std::int64_t S) {
  // Machin: pi = 16*atan(1/5) - 4*atan(1/239), evaluated with guard bits.
  Fx a5 = atan_inv(5, S + 8);
  Fx a239 = atan_inv(239, S + 8);
  BigInt y = 16 * a5.y - 4 * a239.y;
  BigInt e = 16 * a5.err + 4 * a239.err;
  y = floor_shr(y, 8);
  e = (e >> 8) + 2 + 4;  // shift slack plus nesting pad
  return {std::move(y), std::move(e)};
}

// Constants are computed once per power-of-two precision step and rescaled on
// demand, so a cached read is bit-identical to recomputation.
std::int64_t schedule_bits(std::int64_t F) {
  std::int64_t s = 64;
  while (s < F) s *= 2;
  return s;
}

class ConstantTable {
 public:
  explicit ConstantTable(Fx (*compute)(std::int64_t)) : compute_(compute) {}

  Fx at(std::int64_t F) {
    const std::int64_t S = schedule_bits(F);
    Fx base;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(S);
      if (it == entries_.end()) it = entries_.emplace(S, compute_(S)).first;
      base = it->second;
    }
    const std::int64_t d = S - F;
    if (d == 0) return base;
    return {base.y >> static_cast<unsigned>(d),
            (base.err >> static_cast<unsigned>(d)) + 2};
  }

 private:
  Fx (*compute_)(std::int64_t);
  std::mutex mu_;
  std::map<std::int64_t, Fx> entries_;
};

Fx ln2_at(std::int64_t F) {
  static ConstantTable table(&compute_ln2);
  return table.at(F);
}

Fx pi_at(std::int64_t F) {
  static ConstantTable table(&compute_pi);
  return table.at(F);
}

// A kernel result: value in [(y-err)*2^scale, (y+err)*2^scale].
struct KernelOut {
  BigInt y;
  BigInt err;
  std::int64_t scale = 0;
};

bool resolved(const KernelOut& k, std::int64_t q) {
  BigInt ay = abs(k.y);
  BigInt e = k.err < 1 ? BigInt(1) : k.err;
  if (ay <= e) return false;
  return bit_length(ay) - bit_length(e) >= q + 3;
}

BigFloat bf_scaled(const BigInt& v, std::int64_t scale, const Format& f,
                   RoundingDirection dir) {
  if (v.is_zero()) return BigFloat::zero(f);
  bool neg = v < 0;
  return BigFloat::make_rounded(neg, neg ? BigInt(-v) : v, scale, false, f, dir);
}

Bracket bracket_of(const KernelOut& k, std::int64_t q) {
  const Format B = bracket_format(q);
  BigInt e = k.err < 1 ? BigInt(1) : k.err;
  return Bracket(bf_scaled(k.y - e, k.scale, B, RoundingDirection::down),
                 bf_scaled(k.y + e, k.scale, B, RoundingDirection::up));
}

// exp(x) = 2^k * exp(x - k*ln2) with k = nearest integer to x/ln2.
KernelOut kernel_exp(const BigFloat& x, std::int64_t F) {
  Fx l0 = ln2_at(128);
  BigInt sm = x.significand();
  if (x.sign() < 0) sm = -sm;
  BigInt T = floor_div(floor_shr(sm, -(x.lsb_exponent() + 128 + 64)), l0.y);
  BigInt K = floor_shr(T + pow2(63), 64);

  const std::int64_t F1 = F + 64;
  Fx xr = fx_of(x, F1);
  Fx r = xr;
  if (!K.is_zero()) {
    const std::int64_t kbits = abs_bits(K) + 4;
    Fx l = ln2_at(F1 + kbits);
    r.y -= floor_shr(K * l.y, kbits);
    r.err += floor_shr(abs(K) * l.err, kbits) + 2;
  }
  Fx s = exp_series(r, F1);
  return {std::move(s.y), std::move(s.err),
          K.convert_to<std::int64_t>() - F1};
}

// exp2(x) = 2^k * exp((x-k)*ln2) with k = nearest integer to x.
KernelOut kernel_exp2(const BigFloat& x, std::int64_t F) {
  BigInt sm = x.significand();
  if (x.sign() < 0) sm = -sm;
  const std::int64_t el = x.lsb_exponent();
  BigInt K = el >= 0 ? BigInt(sm << static_cast<unsigned>(el))
                     : floor_shr(sm + pow2(-el - 1), -el);
  const std::int64_t F1 = F + 64;
  const BigInt k1 = K * pow2(F1);
  const std::int64_t sh = el + F1;
  Fx g = sh >= 0 ? Fx{sm * pow2(sh) - k1, BigInt(0)}
                 : Fx{floor_shr(sm, -sh) - k1, BigInt(1)};
  Fx u = fx_mul(g, ln2_at(F1), F1);
  Fx s = exp_series(u, F1);
  return {std::move(s.y), std::move(s.err),
          K.convert_to<std::int64_t>() - F1};
}

// log(x) (or log2): split x = msig*2^t with msig in [0.75, 1.5), then
// log(msig) = 2*atanh(z) for z = (msig-1)/(msig+1), |z| <= 1/5.
KernelOut kernel_log(const BigFloat& x, std::int64_t F, bool base2) {
  const BigInt& m = x.significand();
  const std::int64_t b = bit_length(m);
  const std::int64_t e = x.exponent();
  const bool high = b >= 2 && m >= (BigInt(3) << static_cast<unsigned>(b - 2));
  const std::int64_t t = high ? e + 1 : e;
  const std::int64_t F2 = F + 16;

  const std::int64_t sh = F2 - b + (high ? 0 : 1);
  Fx msig = sh >= 0 ? Fx{m << static_cast<unsigned>(sh), BigInt(0)}
                    : Fx{m >> static_cast<unsigned>(-sh), BigInt(1)};
  BigInt one = pow2(F2);
  Fx num{msig.y - one, msig.err};
  Fx den{msig.y + one, msig.err};
  Fx z = fx_div(num, den, F2);
  Fx z2 = fx_mul(z, z, F2);
  Fx s = atanh_ratio_series(z2, F2);
  Fx lm = fx_mul(z, s, F2);
  lm.y *= 2;
  lm.err *= 2;

  if (base2) {
    Fx d = fx_div(lm, ln2_at(F2), F2);
    return {BigInt(t) * pow2(F2) + d.y, std::move(d.err), -F2};
  }
  if (t == 0) return {std::move(lm.y), std::move(lm.err), -F2};
  const std::int64_t kbits = abs_bits(BigInt(t)) + 4;
  Fx l = ln2_at(F2 + kbits);
  BigInt ty = floor_shr(BigInt(t) * l.y, kbits);
  BigInt te = floor_shr(abs(BigInt(t)) * l.err, kbits) + 2;
  return {ty + lm.y, te + lm.err, -F2};
}

// atanh(x) for |x| < 1/2: x * sum x^(2n)/(2n+1), keeping x as an exact factor
// so near-zero arguments lose no relative accuracy.
KernelOut kernel_atanh_small(const BigFloat& x, std::int64_t F) {
  const std::int64_t F2 = F + 16;
  BigFloat ax = x.abs();
  Fx xf = fx_of(ax, F2);
  Fx x2 = fx_mul(xf, xf, F2);
  Fx s = atanh_ratio_series(x2, F2);
  BigInt y = x.significand() * s.y;
  if (x.sign() < 0) y = -y;
  BigInt err = x.significand() * s.err;
  return {std::move(y), std::move(err), x.lsb_exponent() - F2};
}

// sin/cos via r = x - K*pi/2 with K the nearest integer multiple; the
// quadrant picks the series and sign, and |r| <= pi/4 (plus rounding slop)
// keeps both series free of cancellation.
KernelOut kernel_trig(const BigFloat& x, std::int64_t F, bool want_sin) {
  const std::int64_t ex = x.exponent();
  const std::int64_t Fred = (ex > 0 ? ex : 0) + F + 16;
  Fx P = pi_at(Fred);
  BigInt sm = x.significand();
  if (x.sign() < 0) sm = -sm;
  BigInt T = floor_div(floor_shr(sm, -(x.lsb_exponent() + Fred + 64 + 1)), P.y);
  BigInt K = floor_shr(T + pow2(63), 64);

  std::int64_t Fr = Fred + 1;
  Fx xr = fx_of(x, Fr);
  Fx r{xr.y - K * P.y, xr.err + abs(K) * P.err};

  // Keep roughly F significant bits in r; its scale tracks the shift.
  const std::int64_t drop = abs_bits(r.y) - (F + 24);
  if (drop > 0) {
    r.y = floor_shr(r.y, drop);
    r.err = (r.err >> static_cast<unsigned>(drop)) + 2;
    Fr -= drop;
  }

  const std::int64_t Fu = F + 16;
  BigInt u_raw = r.y * r.y;
  BigInt u_err = 2 * abs(r.y) * r.err + r.err * r.err;
  const std::int64_t ush = 2 * Fr - Fu;
  Fx u{floor_shr(u_raw, ush), floor_shr(u_err, ush) + 2};

  int j = ((K % 4).convert_to<int>() + 4) % 4;
  const bool sin_series = want_sin ? (j % 2 == 0) : (j % 2 == 1);
  const int sgn = want_sin ? (j < 2 ? 1 : -1) : (j == 0 || j == 3 ? 1 : -1);

  if (sin_series) {
    Fx s = alt_trig_series(u, Fu, false);
    BigInt y = r.y * s.y * sgn;
    BigInt err = abs(r.y) * s.err + abs(s.y) * r.err + r.err * s.err;
    return {std::move(y), std::move(err), -Fr - Fu};
  }
  Fx c = alt_trig_series(u, Fu, true);
  return {sgn * c.y, std::move(c.err), -Fu};
}

BigInt icbrt(const BigInt& a) {
  if (a < 8) return a > 0 ? BigInt(1) : BigInt(0);
  BigInt x = BigInt(1) << static_cast<unsigned>(bit_length(a) / 3 + 2);
  for (;;) {
    BigInt xn = (2 * x + a / (x * x)) / 3;
    if (xn >= x) break;
    x = xn;
  }
  while (x * x * x > a) --x;
  while ((x + 1) * (x + 1) * (x + 1) <= a) ++x;
  return x;
}

KernelOut kernel_sqrt(const BigFloat& x, std::int64_t q) {
  const std::int64_t n = q + 16;
  const BigInt& m = x.significand();
  std::int64_t t = 2 * n + 2 - bit_length(m);
  if (t < 0) t = 0;
  if (((x.lsb_exponent() - t) & 1) != 0) ++t;
  BigInt A = m << static_cast<unsigned>(t);
  BigInt s = boost::multiprecision::sqrt(A);
  return {std::move(s), BigInt(1), (x.lsb_exponent() - t) / 2};
}

KernelOut kernel_cbrt(const BigFloat& x, std::int64_t q) {
  const std::int64_t n = q + 16;
  const BigInt& m = x.significand();
  std::int64_t t = 3 * n + 3 - bit_length(m);
  if (t < 0) t = 0;
  std::int64_t rem = (x.lsb_exponent() - t) % 3;
  if (rem < 0) rem += 3;
  t += rem;
  BigInt A = m << static_cast<unsigned>(t);
  BigInt r = icbrt(A);
  if (x.sign() < 0) r = -r;
  return {std::move(r), BigInt(1), (x.lsb_exponent() - t) / 3};
}

KernelOut run_kernel(FunctionId f, const BigFloat& x, std::int64_t q,
                     std::int64_t F) {
  switch (f) {
    case FunctionId::exp: return kernel_exp(x, F);
    case FunctionId::exp2: return kernel_exp2(x, F);
    case FunctionId::log: return kernel_log(x, F, false);
    case FunctionId::log2: return kernel_log(x, F, true);
    case FunctionId::atanh: return kernel_atanh_small(x, F);
    case FunctionId::sin: return kernel_trig(x, F, true);
    case FunctionId::cos: return kernel_trig(x, F, false);
    case FunctionId::sqrt: return kernel_sqrt(x, q);
    case FunctionId::cbrt: return kernel_cbrt(x, q);
    default: break;
  }
  throw Error("run_kernel: not a kernel function");
}

Bracket kernel_bracket(FunctionId f, const BigFloat& x, std::int64_t q) {
  for (int attempt = 0; attempt <= 14; ++attempt) {
    const std::int64_t F = q + (std::int64_t(64) << attempt);
    KernelOut k = run_kernel(f, x, q, F);
    if (resolved(k, q)) return bracket_of(k, q);
  }
  throw ResourceError("enclosure unresolved at the internal precision ceiling");
}

// atanh for 1/2 <= |x| < 1: 0.5*(log(1+x) - log(1-x)), both sums exact.
Bracket atanh_wide_bracket(const BigFloat& x, std::int64_t q) {
  const BigFloat ax = x.abs();
  const Format wide_exact =
      bracket_format(ax.format().precision_bits + 4);
  const BigFloat one = BigFloat::from_int64(1, wide_exact);
  const BigFloat a =
      arith(ArithOp::add, one, ax, wide_exact, RoundingDirection::down);
  const BigFloat b =
      arith(ArithOp::sub, one, ax, wide_exact, RoundingDirection::down);

  const std::int64_t qi = q + 8;
  Bracket la = eval_faithful(FunctionId::log, {a}, qi);
  Bracket lb = eval_faithful(FunctionId::log, {b}, qi);
  const Format Bi = bracket_format(qi);
  const BigFloat half =
      BigFloat::make_rounded(false, BigInt(1), -1, false, Bi, RoundingDirection::down);
  BigFloat lo = arith(ArithOp::sub, la.lo, lb.hi, Bi, RoundingDirection::down);
  BigFloat hi = arith(ArithOp::sub, la.hi, lb.lo, Bi, RoundingDirection::up);
  lo = arith(ArithOp::mul, lo, half, Bi, RoundingDirection::down);
  hi = arith(ArithOp::mul, hi, half, Bi, RoundingDirection::up);
  if (x.sign() < 0) {
    BigFloat t = lo;
    lo = hi.negated();
    hi = t.negated();
  }
  const Format B = bracket_format(q);
  return Bracket(lo.round_to(B, RoundingDirection::down),
                 hi.round_to(B, RoundingDirection::up));
}

bool is_pow2_significand(const BigInt& m) {
  return !m.is_zero() && m == (BigInt(1) << static_cast<unsigned>(bit_length(m) - 1));
}

// Exactly x when representable in f, otherwise absent.
std::optional<BigFloat> fit(bool negative, const BigInt& mant, std::int64_t lsb,
                            const Format& f) {
  if (mant.is_zero()) return BigFloat::zero(f);
  bool inexact = false;
  BigFloat r = BigFloat::make_rounded(negative, mant, lsb, false, f,
                                      RoundingDirection::down, &inexact);
  if (inexact) return std::nullopt;
  return r;
}

std::optional<BigFloat> exact_arith(ArithOp op, const BigFloat& x,
                                    const BigFloat& y, const Format& target) {
  BigFloat dn = arith(op, x, y, target, RoundingDirection::down);
  if (dn.is_nan()) return std::nullopt;
  BigFloat up = arith(op, x, y, target, RoundingDirection::up);
  if (dn == up) return dn;
  return std::nullopt;
}

BigFloat limit_value(FunctionId f, const BigFloat& x, const Format& target) {
  // Infinite-argument limits; callers have already rejected the rest.
  const int s = x.sign();
  switch (f) {
    case FunctionId::exp:
    case FunctionId::exp2:
      return s > 0 ? BigFloat::infinity(target, +1) : BigFloat::zero(target);
    case FunctionId::log:
    case FunctionId::log2:
    case FunctionId::sqrt:
      return BigFloat::infinity(target, +1);
    case FunctionId::cbrt:
      return BigFloat::infinity(target, s);
    default:
      break;
  }
  throw DomainError("no limit at an infinite argument for " +
                    std::string(function_name(f)));
}

bool has_infinite_limit_rule(FunctionId f, const BigFloat& x) {
  switch (f) {
    case FunctionId::exp:
    case FunctionId::exp2:
    case FunctionId::cbrt:
      return true;
    case FunctionId::log:
    case FunctionId::log2:
    case FunctionId::sqrt:
      return x.sign() > 0;
    default:
      return false;
  }
}

void check_unary_domain(FunctionId f, const BigFloat& x) {
  if (x.is_nan()) throw DomainError("nan argument");
  const DomainSpec d = domain_of(f, 0);
  if (x.is_inf()) {
    if (!has_infinite_limit_rule(f, x))
      throw DomainError(std::string(function_name(f)) +
                        ": no limit at an infinite argument");
    return;
  }
  if (!d.contains(x))
    throw DomainError(std::string(function_name(f)) + ": argument outside domain");
}

void check_args(FunctionId f, const std::vector<BigFloat>& args) {
  if (static_cast<int>(args.size()) != arity(f))
    throw std::invalid_argument("argument count does not match function arity");
}

}  // namespace

int arity(FunctionId f) {
  switch (f) {
    case FunctionId::add:
    case FunctionId::sub:
    case FunctionId::mul:
    case FunctionId::div:
      return 2;
    default:
      return 1;
  }
}

std::string_view function_name(FunctionId f) {
  switch (f) {
    case FunctionId::neg: return "neg";
    case FunctionId::add: return "add";
    case FunctionId::sub: return "sub";
    case FunctionId::mul: return "mul";
    case FunctionId::div: return "div";
    case FunctionId::sqr: return "sqr";
    case FunctionId::sqrt: return "sqrt";
    case FunctionId::cbrt: return "cbrt";
    case FunctionId::exp: return "exp";
    case FunctionId::exp2: return "exp2";
    case FunctionId::log: return "log";
    case FunctionId::log2: return "log2";
    case FunctionId::sin: return "sin";
    case FunctionId::cos: return "cos";
    case FunctionId::atanh: return "atanh";
  }
  return "?";
}

std::optional<FunctionId> function_from_name(std::string_view name) {
  static const std::pair<std::string_view, FunctionId> table[] = {
      {"neg", FunctionId::neg},   {"add", FunctionId::add},
      {"sub", FunctionId::sub},   {"mul", FunctionId::mul},
      {"div", FunctionId::div},   {"sqr", FunctionId::sqr},
      {"sqrt", FunctionId::sqrt}, {"cbrt", FunctionId::cbrt},
      {"exp", FunctionId::exp},   {"exp2", FunctionId::exp2},
      {"log", FunctionId::log},   {"log2", FunctionId::log2},
      {"sin", FunctionId::sin},   {"cos", FunctionId::cos},
      {"atanh", FunctionId::atanh},
  };
  for (const auto& [n, id] : table)
    if (n == name) return id;
  return std::nullopt;
}

bool DomainSpec::contains(const BigFloat& x) const {
  if (x.is_nan() || x.is_inf()) return false;
  if (excludes_zero && x.is_zero()) return false;
  const Format small = Format::wide(8);
  if (lo) {
    auto c = compare(x, BigFloat::from_int64(*lo, small));
    if (c == std::partial_ordering::less) return false;
    if (lo_open && c == std::partial_ordering::equivalent) return false;
  }
  if (hi) {
    auto c = compare(x, BigFloat::from_int64(*hi, small));
    if (c == std::partial_ordering::greater) return false;
    if (hi_open && c == std::partial_ordering::equivalent) return false;
  }
  return true;
}

bool DomainSpec::contains_interior(const BigFloat& x) const {
  if (x.is_nan() || x.is_inf()) return false;
  if (excludes_zero && x.is_zero()) return false;
  const Format small = Format::wide(8);
  if (lo && compare(x, BigFloat::from_int64(*lo, small)) !=
                std::partial_ordering::greater)
    return false;
  if (hi && compare(x, BigFloat::from_int64(*hi, small)) !=
                std::partial_ordering::less)
    return false;
  return true;
}

DomainSpec domain_of(FunctionId f, int arg_index) {
  DomainSpec d;
  switch (f) {
    case FunctionId::sqrt:
      d.lo = 0;
      break;
    case FunctionId::log:
    case FunctionId::log2:
      d.lo = 0;
      d.lo_open = true;
      break;
    case FunctionId::atanh:
      d.lo = -1;
      d.hi = 1;
      d.lo_open = true;
      d.hi_open = true;
      break;
    case FunctionId::div:
      if (arg_index == 1) d.excludes_zero = true;
      break;
    default:
      break;
  }
  return d;
}

std::optional<BigFloat> exact_case(FunctionId f, const std::vector<BigFloat>& args) {
  check_args(f, args);
  return exact_case(f, args, args[0].format());
}

std::optional<BigFloat> exact_case(FunctionId f, const std::vector<BigFloat>& args,
                                   const Format& target) {
  check_args(f, args);
  for (const BigFloat& a : args)
    if (!a.is_finite()) return std::nullopt;
  const BigFloat& x = args[0];

  switch (f) {
    case FunctionId::neg:
      if (x.is_zero()) return BigFloat::zero(target);
      return fit(x.sign() > 0, x.significand(), x.lsb_exponent(), target);
    case FunctionId::add:
      return exact_arith(ArithOp::add, x, args[1], target);
    case FunctionId::sub:
      return exact_arith(ArithOp::sub, x, args[1], target);
    case FunctionId::mul:
      return exact_arith(ArithOp::mul, x, args[1], target);
    case FunctionId::div:
      return exact_arith(ArithOp::div, x, args[1], target);
    case FunctionId::sqr:
      return exact_arith(ArithOp::mul, x, x, target);
    case FunctionId::sqrt: {
      if (x.is_zero()) return BigFloat::zero(target);
      if (x.sign() < 0) return std::nullopt;
      BigInt m = x.significand();
      std::int64_t el = x.lsb_exponent();
      if (el & 1) {
        m <<= 1;
        --el;
      }
      BigInt r = boost::multiprecision::sqrt(m);
      if (r * r != m) return std::nullopt;
      return fit(false, r, el / 2, target);
    }
    case FunctionId::cbrt: {
      if (x.is_zero()) return BigFloat::zero(target);
      BigInt m = x.significand();
      std::int64_t el = x.lsb_exponent();
      std::int64_t rem = el % 3;
      if (rem < 0) rem += 3;
      m <<= static_cast<unsigned>(rem);
      el -= rem;
      BigInt r = icbrt(m);
      if (r * r * r != m) return std::nullopt;
      return fit(x.sign() < 0, r, el / 3, target);
    }
    case FunctionId::exp:
      if (x.is_zero()) return fit(false, BigInt(1), 0, target);
      return std::nullopt;
    case FunctionId::exp2: {
      BigInt k;
      if (x.is_zero()) {
        k = 0;
      } else if (x.lsb_exponent() >= 0) {
        k = x.significand() << static_cast<unsigned>(x.lsb_exponent());
        if (x.sign() < 0) k = -k;
      } else {
        const std::int64_t s = -x.lsb_exponent();
        if (s >= bit_length(x.significand()) ||
            (x.significand() & (pow2(s) - 1)) != 0)
          return std::nullopt;
        k = x.significand() >> static_cast<unsigned>(s);
        if (x.sign() < 0) k = -k;
      }
      if (abs_bits(k) > 62) return std::nullopt;
      return fit(false, BigInt(1), k.convert_to<std::int64_t>(), target);
    }
    case FunctionId::log:
      if (x.is_finite_nonzero() && x.sign() > 0 && x.exponent() == 0 &&
          is_pow2_significand(x.significand()))
        return BigFloat::zero(target);
      return std::nullopt;
    case FunctionId::log2: {
      if (!x.is_finite_nonzero() || x.sign() < 0 ||
          !is_pow2_significand(x.significand()))
        return std::nullopt;
      const std::int64_t k = x.exponent();
      return fit(k < 0, BigInt(k < 0 ? -k : k), 0, target);
    }
    case FunctionId::sin:
    case FunctionId::atanh:
      if (x.is_zero()) return BigFloat::zero(target);
      return std::nullopt;
    case FunctionId::cos:
      if (x.is_zero()) return fit(false, BigInt(1), 0, target);
      return std::nullopt;
  }
  return std::nullopt;
}

Bracket eval_faithful(FunctionId f, const std::vector<BigFloat>& args,
                      std::int64_t q) {
  if (q < 2) throw std::invalid_argument("eval_faithful: q must be at least 2");
  check_args(f, args);
  const Format B = bracket_format(q);

  if (arity(f) == 2) {
    const BigFloat& x = args[0];
    const BigFloat& y = args[1];
    if (x.is_nan() || y.is_nan()) throw DomainError("nan argument");
    ArithOp op;
    switch (f) {
      case FunctionId::add: op = ArithOp::add; break;
      case FunctionId::sub: op = ArithOp::sub; break;
      case FunctionId::mul: op = ArithOp::mul; break;
      default: op = ArithOp::div; break;
    }
    if (f == FunctionId::div && y.is_zero())
      throw DomainError("div: divisor is zero");
    BigFloat lo = arith(op, x, y, B, RoundingDirection::down);
    if (lo.is_nan()) throw DomainError("indeterminate arithmetic form");
    return Bracket(lo, arith(op, x, y, B, RoundingDirection::up));
  }

  const BigFloat& x = args[0];
  if (f == FunctionId::neg) {
    if (x.is_nan()) throw DomainError("nan argument");
    const BigFloat n = x.negated();
    return Bracket(n.round_to(B, RoundingDirection::down),
                   n.round_to(B, RoundingDirection::up));
  }
  if (f == FunctionId::sqr) {
    if (x.is_nan()) throw DomainError("nan argument");
    return Bracket(arith(ArithOp::mul, x, x, B, RoundingDirection::down),
                   arith(ArithOp::mul, x, x, B, RoundingDirection::up));
  }

  check_unary_domain(f, x);
  if (x.is_inf()) {
    BigFloat v = limit_value(f, x, B);
    return Bracket(v, v);
  }
  if (auto ex = exact_case(f, args, B)) return Bracket(*ex, *ex);

  if ((f == FunctionId::exp || f == FunctionId::exp2) && x.exponent() >= 60) {
    // The argument dwarfs every representable exponent; the two adjacent
    // boundary values already bracket the result.
    if (x.sign() > 0)
      return Bracket(BigFloat::max_finite(B), BigFloat::infinity(B, +1));
    return Bracket(BigFloat::zero(B), BigFloat::min_positive(B));
  }
  if ((f == FunctionId::sin || f == FunctionId::cos) &&
      x.exponent() > kTrigReductionCap)
    throw ResourceError("trigonometric argument exceeds the reduction limit");
  if (f == FunctionId::atanh && x.exponent() == -1)
    return atanh_wide_bracket(x, q);

  return kernel_bracket(f, x, q);
}

EvalOptions escalation_for(const std::vector<BigFloat>& args,
                           const Format& target) {
  EvalOptions opts;
  std::int64_t depth = 0;
  for (const BigFloat& a : args)
    if (a.is_finite_nonzero() && a.exponent() < -depth) depth = -a.exponent();
  const std::int64_t need = 2 * depth + 2 * target.precision_bits + 256;
  if (need > opts.max_extra) opts.max_extra = need;
  return opts;
}

BigFloat eval_correctly_rounded(FunctionId f, const std::vector<BigFloat>& args,
                                const Format& target, RoundingDirection dir,
                                const EvalOptions& opts) {
  check_args(f, args);

  if (arity(f) == 2) {
    const BigFloat& x = args[0];
    const BigFloat& y = args[1];
    ArithOp op;
    switch (f) {
      case FunctionId::add: op = ArithOp::add; break;
      case FunctionId::sub: op = ArithOp::sub; break;
      case FunctionId::mul: op = ArithOp::mul; break;
      default: op = ArithOp::div; break;
    }
    if (f == FunctionId::div && y.is_zero())
      throw DomainError("div: divisor is zero");
    return arith(op, x, y, target, dir);
  }

  const BigFloat& x = args[0];
  if (f == FunctionId::neg) {
    if (x.is_nan()) throw DomainError("nan argument");
    return x.negated().round_to(target, dir);
  }
  if (f == FunctionId::sqr) {
    if (x.is_nan()) throw DomainError("nan argument");
    return arith(ArithOp::mul, x, x, target, dir);
  }

  check_unary_domain(f, x);
  if (x.is_inf()) return limit_value(f, x, target);
  if (auto ex = exact_case(f, args, target)) return ex->round_to(target, dir);

  if (f == FunctionId::exp || f == FunctionId::exp2) {
    // Magnitude screens: clamp results guaranteed beyond the target's range
    // before the working precision gets involved. 62 bits hold any exponent
    // bound exactly.
    const Format probe = Format::wide(62);
    const std::int64_t lead_min = target.min_leading_exponent();
    const BigFloat two = BigFloat::from_int64(2, probe);
    const bool over =
        f == FunctionId::exp
            ? compare(x, two) >= 0 &&
                  compare(x, BigFloat::from_int64(target.emax + 2, probe)) >= 0
            : compare(x, BigFloat::from_int64(target.emax + 2, probe)) >= 0;
    const bool under =
        f == FunctionId::exp
            ? compare(x, two.negated()) <= 0 &&
                  (lead_min >= 2 ||
                   compare(x, BigFloat::from_int64(lead_min - 2, probe)) <= 0)
            : compare(x, BigFloat::from_int64(lead_min - 2, probe)) <= 0;
    if (over)
      return BigFloat::make_rounded(false, BigInt(3), target.emax + 1, false,
                                    target, dir);
    if (under) {
      const std::int64_t g = target.precision_bits + 4;
      return BigFloat::make_rounded(false, pow2(g) + 1, lead_min - 4 - g, false,
                                    target, dir);
    }
  }

  const std::int64_t p = target.precision_bits;
  std::int64_t extra = opts.start_extra < 4 ? 4 : opts.start_extra;
  const std::int64_t max_extra = opts.max_extra < extra ? extra : opts.max_extra;
  for (;;) {
    Bracket b = eval_faithful(f, args, p + extra);
    if (auto v = round_from_bracket(b, target, dir)) return *v;
    if (extra >= max_extra)
      throw ResourceError("correct rounding unresolved at precision " +
                          std::to_string(p + extra));
    extra = extra * 2 < max_extra ? extra * 2 : max_extra;
  }
}

Bracket pi_enclosure(std::int64_t q) {
  if (q < 2) throw std::invalid_argument("pi_enclosure: q must be at least 2");
  const std::int64_t F = q + 8;
  Fx p = pi_at(F);
  const Format B = bracket_format(q);
  return Bracket(bf_scaled(p.y - p.err, -F, B, RoundingDirection::down),
                 bf_scaled(p.y + p.err, -F, B, RoundingDirection::up));
}

}  // namespace ivalkit
