// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ivalkit {

using BigInt = boost::multiprecision::cpp_int;

enum class RoundingDirection { down, up, nearest_even, toward_zero };

enum class ValueClass { zero, finite, pos_inf, neg_inf, nan };

// A radix-2 floating-point format. `emin`/`emax` bound the exponent of the
// leading significand bit; with `subnormals`, values down to 2^(emin-p+1)
// remain representable at reduced precision.
struct Format {
  int precision_bits = 53;
  std::int64_t emin = -1022;
  std::int64_t emax = 1023;
  bool subnormals = true;

  Format() = default;
  Format(int p, std::int64_t emin_, std::int64_t emax_, bool subnormals_);

  static Format binary64() { return Format(53, -1022, 1023, true); }
  static Format binary32() { return Format(24, -126, 127, true); }
  // Default format for a bare precision: huge exponent range, no subnormals.
  static Format wide(int p) {
    return Format(p, -(std::int64_t(1) << 20), std::int64_t(1) << 20, false);
  }

  // Exponent of the least magnitude representable nonzero value's leading bit.
  std::int64_t min_leading_exponent() const {
    return subnormals ? emin - precision_bits + 1 : emin;
  }

  bool operator==(const Format&) const = default;
};

// An immutable multiprecision binary float. Finite nonzero values store a
// quantum-scaled significand: normal values carry exactly precision_bits bits
// (leading bit weight 2^exponent()), subnormal values fewer with the last bit
// weighing 2^(emin-p+1). Zero is canonical (single, sign +1).
class BigFloat {
 public:
  BigFloat() : BigFloat(zero(Format::binary64())) {}

  static BigFloat zero(const Format& f);
  static BigFloat infinity(const Format& f, int sign);
  static BigFloat quiet_nan(const Format& f);
  static BigFloat max_finite(const Format& f);
  static BigFloat min_positive(const Format& f);  // subnormal-aware

  static BigFloat from_int64(std::int64_t v, const Format& f,
                             RoundingDirection dir = RoundingDirection::nearest_even);
  static BigFloat from_double(double v, const Format& f,
                              RoundingDirection dir = RoundingDirection::nearest_even);

  // Rounds the exact value (-1)^negative * mant * 2^lsb_exp into f. `sticky`
  // marks a true value strictly between mant and mant+1 units; callers must
  // then supply at least precision_bits+2 bits in mant so every rounding
  // decision is independent of where in the unit gap the value lies.
  static BigFloat make_rounded(bool negative, BigInt mant, std::int64_t lsb_exp,
                               bool sticky, const Format& f, RoundingDirection dir,
                               bool* inexact = nullptr);

  ValueClass cls() const { return cls_; }
  bool is_nan() const { return cls_ == ValueClass::nan; }
  bool is_zero() const { return cls_ == ValueClass::zero; }
  bool is_inf() const { return cls_ == ValueClass::pos_inf || cls_ == ValueClass::neg_inf; }
  bool is_finite() const { return cls_ == ValueClass::zero || cls_ == ValueClass::finite; }
  bool is_finite_nonzero() const { return cls_ == ValueClass::finite; }

  int sign() const;  // -1 or +1; zero reports +1
  // Quantum-scaled significand; zero for zero. Meaningful for finite values.
  const BigInt& significand() const { return mant_; }
  // Exponent of the leading significand bit (finite nonzero only).
  std::int64_t exponent() const;
  std::int64_t lsb_exponent() const { return lsb_exp_; }
  const Format& format() const { return fmt_; }
  bool is_subnormal() const;

  BigFloat round_to(const Format& f, RoundingDirection dir) const;
  BigFloat negated() const;
  BigFloat abs() const;

  // Value equality within and across formats; nan compares equal to nothing.
  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

  // Total order over the extended reals, unordered on nan.
  friend std::partial_ordering compare(const BigFloat& a, const BigFloat& b);
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    return compare(a, b);
  }

  // Rank of a finite value within its format's ordered representable set:
  // zero is 0, the k-th positive representable is k, negatives mirror.
  static BigInt ordinal(const BigFloat& x);
  static BigFloat from_ordinal(const BigInt& o, const Format& f);
  static BigInt max_ordinal(const Format& f);  // ordinal of max_finite

  std::string debug_string() const;  // diagnostic only, not a parseable form

 private:
  BigFloat(ValueClass cls, bool negative, BigInt mant, std::int64_t lsb_exp, Format fmt)
      : cls_(cls), negative_(negative), mant_(std::move(mant)),
        lsb_exp_(lsb_exp), fmt_(fmt) {}

  ValueClass cls_ = ValueClass::zero;
  bool negative_ = false;
  BigInt mant_;            // >= 0; sign kept separately
  std::int64_t lsb_exp_ = 0;
  Format fmt_;
};

// A two-sided enclosure: lo <= true value <= hi, both endpoints in the same
// format, neither nan.
struct Bracket {
  BigFloat lo, hi;
  Bracket(BigFloat lo_, BigFloat hi_);
};

enum class ArithOp { add, sub, mul, div };

// Exactly rounded arithmetic on extended reals. Indeterminate forms
// (inf-inf, 0*inf, 0/0, inf/inf, x/0) and nan operands yield nan.
BigFloat arith(ArithOp op, const BigFloat& x, const BigFloat& y,
               const Format& target, RoundingDirection dir);

// Adjacent representable value in x's format. dir must be up or down.
// Saturates at infinities of the same sign; next(0) steps to +-min_positive.
BigFloat next(const BigFloat& x, RoundingDirection dir);

// Rounds both bracket ends into `target` with direction `dir`; a value is
// returned only when both ends agree (otherwise the bracket is too wide to
// decide, and the caller must refine). Brackets containing nan are an
// upstream failure and throw.
std::optional<BigFloat> round_from_bracket(const Bracket& b, const Format& target,
                                           RoundingDirection dir);

// Number of significant bits of a positive integer.
inline std::int64_t bit_length(const BigInt& v) {
  return v.is_zero() ? 0 : std::int64_t(boost::multiprecision::msb(v)) + 1;
}

}  // namespace ivalkit
