// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivalkit/suite.hpp"

namespace ivalkit {

// What the implementation under test promises about its results. A tight
// claim demands the hull itself, accurate allows one outward step past it,
// valid only demands enclosure.
enum class AccuracyClaim { tight, accurate, valid };

std::string_view claim_name(AccuracyClaim c);
std::optional<AccuracyClaim> claim_from_name(std::string_view name);

enum class VerdictKind {
  pass_tight,
  pass_accurate,
  pass_valid,
  fail_unsound,
  fail_inaccurate,
  skip_unsupported,
  error,
};

std::string_view verdict_name(VerdictKind k);

// fail_* and error verdicts make a run unsuccessful; passes and skips do not.
bool verdict_is_failure(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::error;
  std::string detail;  // empty for unremarkable passes
};

// One evaluation request as the implementation under test sees it: the
// function by name (it may support names this engine does not), the target
// precision, and the inputs in suite-value form. `format` is the resolved
// format the case was parsed against; `format_hint` is forwarded on the wire
// when present so IEEE presets survive the round trip.
struct AdapterRequest {
  std::string function;
  int precision = 53;
  std::optional<std::string> format_hint;
  Format format = Format::binary64();
  std::vector<TestValue> input;
};

struct AdapterReply {
  enum class Status { ok, unsupported, error };
  Status status = Status::error;
  TestValue value;     // set when status == ok
  std::string detail;  // set when status == error
};

// An implementation under test. Calls carry no state between them; an
// adapter that cannot take concurrent calls reports false from
// concurrent_safe() and the harness serializes access to it.
class Adapter {
 public:
  virtual ~Adapter() = default;
  virtual std::string identity() const = 0;
  virtual bool concurrent_safe() const { return false; }
  virtual AdapterReply call(const AdapterRequest& req) = 0;
};

// The in-process engine: answers every function this library evaluates,
// unsupported for any other name.
class BuiltinAdapter final : public Adapter {
 public:
  std::string identity() const override { return "builtin"; }
  bool concurrent_safe() const override { return true; }
  AdapterReply call(const AdapterRequest& req) override;
};

// Runs a child process speaking newline-delimited JSON on its standard
// streams: one request line, one reply line, ids echoed verbatim. The child
// is spawned lazily, kept alive across calls, and respawned after a crash,
// timeout, or protocol violation (each of which yields an error reply for
// the call that saw it).
class SubprocessAdapter final : public Adapter {
 public:
  explicit SubprocessAdapter(std::vector<std::string> argv,
                             double timeout_seconds = 10.0);
  ~SubprocessAdapter() override;

  SubprocessAdapter(const SubprocessAdapter&) = delete;
  SubprocessAdapter& operator=(const SubprocessAdapter&) = delete;

  std::string identity() const override;
  AdapterReply call(const AdapterRequest& req) override;

 private:
  bool ensure_running(std::string* why);
  void shutdown() noexcept;
  std::optional<std::string> read_line(double deadline_seconds);

  std::vector<std::string> argv_;
  double timeout_;
  long pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
};

// Judges one case: the adapter's answer must contain the expected tight
// hull (anything less is unsound no matter the claim); beyond that the claim
// decides how close it must come. Decorations are compared only when both
// sides spell one out. Non-interval expectations demand exact equality.
Verdict run_case(const TestCase& c, Adapter& a, AccuracyClaim claim);

// run_case plus point probes: n >= 1 sample points from the input clipped to
// the function's domain (both endpoints always included, interior points
// drawn uniformly by representable-value rank from `seed`). Each point's
// correctly rounded bracket, and the adapter's own answer for the singleton
// [x,x], must land inside the adapter's interval for the full case.
Verdict fuzz_case(const TestCase& c, Adapter& a, AccuracyClaim claim, int n,
                  std::uint64_t seed);

struct CaseResult {
  std::size_t index = 0;
  std::string function;
  Verdict verdict;
  std::string computed;           // adapter's answer, rendered; empty if none
  std::string expected_tight;
  std::string expected_accurate;  // empty when the case has no accurate bound
};

struct RunOptions {
  AccuracyClaim claim = AccuracyClaim::tight;
  int fuzz = 0;  // point probes per case; 0 runs cases without fuzzing
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct Report {
  std::string suite_name;
  std::string adapter;
  AccuracyClaim claim = AccuracyClaim::tight;
  std::uint64_t seed = 0;
  int fuzz = 0;
  std::vector<CaseResult> cases;
  std::map<std::string, std::size_t> verdict_counts;
  std::map<std::string, std::map<std::string, std::size_t>> function_verdicts;
  // Measured for display, deliberately left out of serialized reports so a
  // rerun with the same inputs produces identical bytes.
  double wall_seconds = 0.0;
};

// Runs every case. Invalid cases (fatal validation issues) become error
// verdicts without touching the adapter. With jobs > 1 cases are judged
// concurrently; per-case fuzz seeds derive from (seed, index), so the report
// is byte-identical to the serial one.
Report run_suite(const TestSuite& s, Adapter& a, const RunOptions& opts);

bool report_has_failures(const Report& r);
std::string report_to_json(const Report& r);
std::string report_to_junit(const Report& r);

}  // namespace ivalkit
