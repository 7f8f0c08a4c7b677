// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivalkit/suite.hpp"

namespace ivalkit {

// Expected outputs for one case. `tight` is the hull with its decoration;
// `accurate` is the loosest answer an accurate-mode implementation may give:
// one outward step around the hull computed over the one-step-widened
// inputs. It always contains `tight` and carries the same decoration,
// degraded to dac when the widening runs into an infinity.
struct ExpectedOutputs {
  DecoratedInterval tight;
  DecoratedInterval accurate;
};

ExpectedOutputs expected_outputs(FunctionId f, const std::vector<Interval>& inputs,
                                 const Format& format);
ExpectedOutputs expected_outputs(FunctionId f,
                                 const std::vector<DecoratedInterval>& inputs,
                                 const Format& format);

// A hard-to-round argument: the binary expansion of f(x) carries a run of
// `hardness` identical bits immediately after the target precision, so any
// evaluator working below roughly precision + hardness bits cannot place the
// value against the rounding boundary. Zero runs defeat rounding down and
// toward zero, one runs defeat rounding up.
enum class RunKind { zeros, ones };
enum class RunFilter { zeros, ones, both };

struct HardCase {
  BigFloat x;
  FunctionId function = FunctionId::exp;
  int hardness = 1;
  RunKind run_kind = RunKind::zeros;
  std::vector<RoundingDirection> direction_affected;
};

// An inclusive argument window within one binade (both endpoints share a
// leading-bit exponent and sign), scanned exhaustively at format precision.
struct SearchRange {
  BigFloat t0, t1;
  Format format;
};

struct HardSearchOptions {
  int jobs = 1;
  // Representable-argument ceiling; wider ranges are refused outright.
  std::int64_t budget = std::int64_t(1) << 22;
  // First working surplus over precision + hardness. Results are invariant
  // under raising it; the certification pass re-checks at verify_extra.
  std::int64_t start_extra = 64;
  std::int64_t verify_extra = 128;
};

// Every representable x in r whose expansion of f(x) after bit p carries a
// run of at least `hardness` equal bits, classified by run kind, in
// argument order. Exactly representable values are excluded: an infinite
// run is exactness, not hardness. Throws ResourceError when the range
// exceeds the budget or the working precision ceiling.
std::vector<HardCase> find_hard_cases(FunctionId f, const SearchRange& r,
                                      int hardness,
                                      RunFilter filter = RunFilter::both,
                                      const HardSearchOptions& opts = {});

// Category presets for a function: `easy` covers small everyday arguments,
// `special` signed zeros, infinite and half-unbounded endpoints and domain
// edges, `exceptional` rejected constructions and propagation of the empty
// and ill inputs they produce.
enum class CaseCategory { easy, special, exceptional };
std::optional<CaseCategory> category_from_name(std::string_view name);
std::string_view category_name(CaseCategory c);

std::vector<TestCase> emit_category_cases(FunctionId f, const Format& format,
                                          CaseCategory category);

// One complete case: hex-endpoint inputs, both expected outputs, and the
// format's precision (plus an IEEE hint when the format is a preset). The
// result validates cleanly and the built-in engine passes it under claim
// tight by construction.
TestCase make_case(FunctionId f, const std::vector<Interval>& inputs,
                   const Format& format);
TestCase make_case(FunctionId f, const std::vector<DecoratedInterval>& inputs,
                   const Format& format,
                   std::optional<std::string> comment = std::nullopt);

// Suite-of-singletons view of a hard-case search plus the sidecar metadata
// document describing each hit.
TestSuite hard_cases_to_suite(const std::vector<HardCase>& cases, const Format& format);
std::string hard_cases_metadata_json(FunctionId f, const SearchRange& r, int hardness,
                                     const std::vector<HardCase>& cases);

}  // namespace ivalkit
