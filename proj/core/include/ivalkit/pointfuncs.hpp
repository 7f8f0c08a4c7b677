// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ivalkit/bigfloat.hpp"

namespace ivalkit {

// The supported point operations. Names follow IEEE 1788-2015 terminology so
// they round-trip through suite files unchanged.
enum class FunctionId {
  neg,
  add,
  sub,
  mul,
  div,
  sqr,
  sqrt,
  cbrt,
  exp,
  exp2,
  log,
  log2,
  sin,
  cos,
  atanh,
};

int arity(FunctionId f);
std::string_view function_name(FunctionId f);
std::optional<FunctionId> function_from_name(std::string_view name);

// Natural real domain of one argument position, as an extended-real interval
// with optional open ends; div's second argument additionally excludes zero.
struct DomainSpec {
  std::optional<std::int64_t> lo;  // absent = unbounded below
  std::optional<std::int64_t> hi;  // absent = unbounded above
  bool lo_open = false;
  bool hi_open = false;
  bool excludes_zero = false;

  // Membership for finite or infinite values (infinities are never members).
  bool contains(const BigFloat& x) const;
  // Membership in the interior of the domain within the reals.
  bool contains_interior(const BigFloat& x) const;
};

DomainSpec domain_of(FunctionId f, int arg_index = 0);

// Working-precision schedule for the correctly rounded evaluator: the first
// attempt runs at target precision + start_extra bits and the surplus doubles
// until it reaches max_extra, after which evaluation gives up.
struct EvalOptions {
  std::int64_t start_extra = 20;
  std::int64_t max_extra = 2000;
};

// Schedule ceiling sized to the arguments. Near a fixed point of exp, exp2,
// sin, cos, or atanh the result matches a short polynomial in the argument
// out to roughly twice the argument's exponent depth, so resolving directed
// rounding legitimately needs that many surplus bits; the default ceiling is
// kept for everything shallower.
EvalOptions escalation_for(const std::vector<BigFloat>& args, const Format& target);

// Recognizes arguments where f is exactly representable: transcendental
// functions only at their isolated exact points (exp(0), exp2 at integers,
// sin(0), cos(0), log(1), log2 at powers of two, atanh(0)), algebraic
// functions by integer exactness tests. The two-argument overload checks
// representability against `target`; the first uses args[0]'s format.
std::optional<BigFloat> exact_case(FunctionId f, const std::vector<BigFloat>& args);
std::optional<BigFloat> exact_case(FunctionId f, const std::vector<BigFloat>& args,
                                   const Format& target);

// Two-sided enclosure of f(args) at working precision q: endpoints carry q
// significand bits (in an internal format with generous exponent range) and
// hi is at most two steps above lo. Infinite arguments follow limit rules
// where the limit exists (exp(-inf)=0, log(+inf)=+inf, cbrt(+-inf)=+-inf, ...).
// Arguments outside the natural domain throw DomainError; arguments whose
// enclosure cannot be resolved within internal escalation throw ResourceError.
Bracket eval_faithful(FunctionId f, const std::vector<BigFloat>& args, std::int64_t q);

// True directed rounding of f(args) into `target`. Exact cases are rounded
// directly; anything else runs eval_faithful at escalating precision until
// both bracket ends round identically. Throws ResourceError naming the last
// attempted precision if the schedule's ceiling is exhausted.
BigFloat eval_correctly_rounded(FunctionId f, const std::vector<BigFloat>& args,
                                const Format& target, RoundingDirection dir,
                                const EvalOptions& opts = {});

// Enclosure of pi at precision q (q >= 2), width at most two steps.
// Refinements nest: the bracket at a larger q is contained in any coarser one.
Bracket pi_enclosure(std::int64_t q);

}  // namespace ivalkit
