// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/hexfloat.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

#include "ivalkit/errors.hpp"

namespace ivalkit {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  bool eat(char c) {
    if (!done() && s[pos] == c) { ++pos; return true; }
    return false;
  }
};

int hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Signed decimal integer with a saturation bound; used for exponents, where
// anything beyond the bound already rounds to 0 or infinity.
std::int64_t parse_exponent(Cursor& cur, std::int64_t bound) {
  bool neg = false;
  if (cur.eat('-')) neg = true;
  else cur.eat('+');
  if (!std::isdigit(static_cast<unsigned char>(cur.peek())))
    throw ParseError("malformed exponent", cur.pos);
  std::int64_t v = 0;
  while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    if (v <= bound) v = v * 10 + (cur.s[cur.pos] - '0');
    ++cur.pos;
  }
  if (v > bound) v = bound;
  return neg ? -v : v;
}

bool match_keyword(std::string_view rest, std::string_view kw) {
  if (rest.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(rest[i])) != kw[i]) return false;
  return true;
}

BigFloat finish(bool neg, const BigInt& mant, std::int64_t lsb_exp, bool sticky,
                const Format& f, RoundingDirection dir, ParsePolicy policy) {
  bool inexact = false;
  BigFloat r = BigFloat::make_rounded(neg, mant, lsb_exp, sticky, f, dir, &inexact);
  if (policy == ParsePolicy::require_exact && inexact)
    throw PrecisionError("value not exactly representable at the target precision");
  return r;
}

// Conservative integer bounds on t*log2(10), valid for either sign of t:
// 33219/10000 < log2(10) < 33220/10000.
std::int64_t floor_log2_pow10(std::int64_t t) {  // result <= t*log2(10)
  const std::int64_t num = t >= 0 ? t * 33219 : t * 33220;
  return num >= 0 ? num / 10000 : -((-num + 9999) / 10000);
}
std::int64_t ceil_log2_pow10(std::int64_t t) {  // result >= t*log2(10)
  const std::int64_t num = t >= 0 ? t * 33220 : t * 33219;
  return num >= 0 ? (num + 9999) / 10000 : -((-num) / 10000);
}

BigFloat parse_decimal(Cursor& cur, bool neg, const Format& f,
                       RoundingDirection dir, ParsePolicy policy) {
  BigInt d = 0;
  std::int64_t ndigits = 0, frac_digits = 0;
  while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    d = d * 10 + (cur.s[cur.pos] - '0');
    ++ndigits;
    ++cur.pos;
  }
  if (ndigits == 0) throw ParseError("expected a digit", cur.pos);
  if (cur.eat('.')) {
    while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      d = d * 10 + (cur.s[cur.pos] - '0');
      ++ndigits;
      ++frac_digits;
      ++cur.pos;
    }
  }
  std::int64_t exp10 = 0;
  if (cur.peek() == 'e' || cur.peek() == 'E') {
    ++cur.pos;
    exp10 = parse_exponent(cur, std::int64_t(1) << 50);
  }
  if (!cur.done()) throw ParseError("trailing characters after number", cur.pos);
  if (d.is_zero()) return BigFloat::zero(f);

  const std::int64_t k = exp10 - frac_digits;
  // Magnitude screen. With dd significant decimal digits, the value lies in
  // [10^(dd-1+k), 10^(dd+k)); dd is bracketed from the bit length so values
  // clearly beyond the format's range clamp without computing 5^|k|.
  const std::int64_t bits = bit_length(d);
  const std::int64_t dd_hi = bits * 30103 / 100000 + 1;
  const std::int64_t dd_lo = (bits - 1) * 30102 / 100000 + 1;
  const std::int64_t lead_min = f.min_leading_exponent();
  if (floor_log2_pow10(dd_lo - 1 + k) >= f.emax + 3) {
    if (policy == ParsePolicy::require_exact)
      throw PrecisionError("decimal value overflows the target format");
    return BigFloat::make_rounded(neg, BigInt(1), f.emax + 2, false, f, dir);
  }
  if (ceil_log2_pow10(dd_hi + k) <= lead_min - 2) {
    if (policy == ParsePolicy::require_exact)
      throw PrecisionError("decimal value underflows the target format");
    const std::int64_t g = f.precision_bits + 4;
    return BigFloat::make_rounded(neg, (BigInt(1) << static_cast<unsigned>(g)) + 1,
                                  lead_min - 4 - g, false, f, dir);
  }
  if (k > (std::int64_t(1) << 21) || k < -(std::int64_t(1) << 21))
    throw ResourceError("decimal literal exceeds supported magnitude");

  if (k >= 0) {
    const BigInt m = d * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(k));
    return finish(neg, m, k, false, f, dir, policy);
  }
  // value = d / (5^-k * 2^-k); divide with enough quotient bits that the
  // half-unit surrogate rounds identically to the true quotient.
  const BigInt den = boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(-k));
  const std::int64_t s = std::max<std::int64_t>(
      0, f.precision_bits + 6 + bit_length(den) - bit_length(d));
  BigInt q, r;
  boost::multiprecision::divide_qr(d << static_cast<unsigned>(s), den, q, r);
  if (r.is_zero()) return finish(neg, q, k - s, false, f, dir, policy);
  return finish(neg, (q << 1) + 1, k - s - 1, true, f, dir, policy);
}

}  // namespace

BigFloat parse_number(std::string_view text, const Format& target,
                      RoundingDirection dir, ParsePolicy policy) {
  // Trim surrounding whitespace, keeping offsets relative to the original.
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  Cursor cur{text.substr(0, end), begin};
  if (cur.done()) throw ParseError("empty number", begin);

  bool neg = false;
  if (cur.eat('-')) neg = true;
  else cur.eat('+');

  const std::string_view rest = cur.s.substr(cur.pos);
  if (match_keyword(rest, "inf"))
    return BigFloat::infinity(target, neg ? -1 : 1);
  if (match_keyword(rest, "nan"))
    return BigFloat::quiet_nan(target);

  if (cur.peek() == '0' && cur.pos + 1 < cur.s.size() &&
      (cur.s[cur.pos + 1] == 'x' || cur.s[cur.pos + 1] == 'X')) {
    cur.pos += 2;
    BigInt m = 0;
    std::int64_t ndigits = 0, frac_digits = 0;
    while (hex_digit_value(cur.peek()) >= 0) {
      m = (m << 4) + hex_digit_value(cur.peek());
      ++ndigits;
      ++cur.pos;
    }
    if (ndigits == 0) throw ParseError("expected a hex digit", cur.pos);
    if (cur.eat('.')) {
      while (hex_digit_value(cur.peek()) >= 0) {
        m = (m << 4) + hex_digit_value(cur.peek());
        ++ndigits;
        ++frac_digits;
        ++cur.pos;
      }
    }
    std::int64_t e2 = 0;
    const std::int64_t bound = std::int64_t(1) << 50;
    if (cur.eat('@')) {
      e2 = 4 * parse_exponent(cur, bound);
    } else if (cur.peek() == 'p' || cur.peek() == 'P') {
      ++cur.pos;
      e2 = parse_exponent(cur, bound);
    }
    if (!cur.done()) throw ParseError("trailing characters after number", cur.pos);
    if (m.is_zero()) return BigFloat::zero(target);
    return finish(neg, m, e2 - 4 * frac_digits, false, target, dir, policy);
  }

  return parse_decimal(cur, neg, target, dir, policy);
}

std::string format_hex(const BigFloat& x) {
  switch (x.cls()) {
    case ValueClass::nan:
      throw std::invalid_argument("format_hex: nan has no hex form");
    case ValueClass::zero:
      return "0x0@0";
    case ValueClass::pos_inf:
      return "inf";
    case ValueClass::neg_inf:
      return "-inf";
    case ValueClass::finite:
      break;
  }

  const std::int64_t e2 = x.exponent();
  const std::int64_t e16 = e2 >= 0 ? e2 / 4 : -((-e2 + 3) / 4);
  const std::int64_t s = x.lsb_exponent() - 4 * e16;

  BigInt m = x.significand();
  std::int64_t frac_bits = 0;
  if (s >= 0) {
    m <<= static_cast<unsigned>(s);
  } else {
    frac_bits = ((-s + 3) / 4) * 4;
    m <<= static_cast<unsigned>(frac_bits + s);
  }

  std::ostringstream os;
  os << std::hex << m;
  std::string digits = os.str();
  // The shift puts the value in [16^(n-1), 16^n) for n = 1 + frac_bits/4.
  assert(digits.size() == static_cast<std::size_t>(frac_bits / 4) + 1);
  std::string out = x.sign() < 0 ? "-0x" : "0x";
  out += digits[0];
  std::string frac = digits.substr(1);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) {
    out += '.';
    out += frac;
  }
  out += '@';
  out += std::to_string(e16);
  return out;
}

}  // namespace ivalkit
