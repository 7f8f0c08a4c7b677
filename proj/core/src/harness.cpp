// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "ivalkit/harness.hpp"

#include <atomic>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "ivalkit/errors.hpp"

namespace ivalkit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(s);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() { return splitmix64(state); }
};

// Uniform integer in [0, n) by masked rejection on 64-bit chunks.
BigInt uniform_below(Rng& g, const BigInt& n) {
  if (n <= 1) return 0;
  const std::int64_t bits = bit_length(n - 1);
  const std::int64_t words = (bits + 63) / 64;
  const int top_bits = static_cast<int>(bits - (words - 1) * 64);
  const std::uint64_t top_mask =
      top_bits >= 64 ? ~0ULL : ((std::uint64_t(1) << top_bits) - 1);
  for (;;) {
    BigInt v = 0;
    for (std::int64_t w = 0; w < words; ++w) {
      std::uint64_t chunk = g.next();
      if (w == words - 1) chunk &= top_mask;
      v |= BigInt(chunk) << static_cast<unsigned>(w * 64);
    }
    if (v < n) return v;
  }
}

AdapterRequest request_for(const TestCase& c) {
  AdapterRequest q;
  q.function = c.function_text;
  q.precision = c.precision;
  q.format_hint = c.format_hint;
  q.format = c.format;
  q.input = c.input;
  return q;
}

std::string render_value(const TestValue& v) {
  switch (v.kind) {
    case TestValue::Kind::interval:
      if (v.parsed) return format_interval(*v.parsed);
      return "[" + v.inf_text + ", " + v.sup_text + "]" +
             (v.dec_text ? "_" + *v.dec_text : "");
    case TestValue::Kind::number:
      if (!v.number) return v.val_text;
      return v.number->is_nan() ? "nan" : format_hex(*v.number);
    case TestValue::Kind::boolean:
      return v.boolean ? "true" : "false";
    case TestValue::Kind::string:
      return v.val_text;
  }
  return v.val_text;
}

Verdict judge(const TestCase& c, const AdapterReply& r, AccuracyClaim claim) {
  if (r.status == AdapterReply::Status::unsupported)
    return {VerdictKind::skip_unsupported, ""};
  if (r.status == AdapterReply::Status::error)
    return {VerdictKind::error,
            r.detail.empty() ? std::string("adapter error") : r.detail};

  const TestValue& z = r.value;
  if (c.tight.kind != TestValue::Kind::interval) {
    if (z.kind != c.tight.kind)
      return {VerdictKind::error, "result type mismatch: expected " +
                                      render_value(c.tight) + ", got " +
                                      render_value(z)};
    bool eq = false;
    switch (c.tight.kind) {
      case TestValue::Kind::number:
        if (!c.tight.number)
          return {VerdictKind::error, "expected value did not parse"};
        if (!z.number)
          return {VerdictKind::error, "malformed result value: " +
                                          z.parse_issue.value_or(z.val_text)};
        eq = (c.tight.number->is_nan() && z.number->is_nan()) ||
             *c.tight.number == *z.number;
        break;
      case TestValue::Kind::boolean:
        eq = z.boolean == c.tight.boolean;
        break;
      default:
        eq = z.val_text == c.tight.val_text;
        break;
    }
    if (eq) return {VerdictKind::pass_tight, ""};
    return {VerdictKind::fail_inaccurate,
            "expected " + render_value(c.tight) + ", got " + render_value(z)};
  }

  if (z.kind != TestValue::Kind::interval)
    return {VerdictKind::error,
            "result type mismatch: expected an interval, got " + render_value(z)};
  if (!z.parsed)
    return {VerdictKind::error,
            "malformed result value: " + z.parse_issue.value_or(z.inf_text)};
  if (!c.tight.parsed)
    return {VerdictKind::error, "expected tight value did not parse"};

  const Interval& tight = c.tight.parsed->interval;
  const Interval& got = z.parsed->interval;
  if (!subset(tight, got))
    return {VerdictKind::fail_unsound,
            "result " + format_interval(got) +
                " does not contain the tight hull " + format_interval(tight)};

  // Decorations are compared only when both sides spell one out; a
  // bare-vs-decorated pairing degrades to interval comparison with a note.
  const bool expected_dec = c.tight.dec_text.has_value();
  const bool got_dec = z.dec_text.has_value();
  const bool compare_dec = expected_dec && got_dec;
  const std::string note = (expected_dec != got_dec)
                               ? "decoration present on one side only; not compared"
                               : "";

  switch (claim) {
    case AccuracyClaim::tight: {
      const bool eq = equal(got, tight) &&
                      (!compare_dec || z.parsed->dec == c.tight.parsed->dec);
      if (eq) return {VerdictKind::pass_tight, note};
      return {VerdictKind::fail_inaccurate,
              "expected " + render_value(c.tight) + ", got " + render_value(z)};
    }
    case AccuracyClaim::accurate: {
      if (!c.accurate || !c.accurate->parsed)
        return {VerdictKind::error, "case carries no accurate bound"};
      const Interval& acc = c.accurate->parsed->interval;
      if (subset(got, acc)) return {VerdictKind::pass_accurate, note};
      return {VerdictKind::fail_inaccurate,
              "result " + format_interval(got) + " exceeds the accurate bound " +
                  format_interval(acc)};
    }
    case AccuracyClaim::valid:
      return {VerdictKind::pass_valid, note};
  }
  return {VerdictKind::error, "unreachable claim"};
}

// Ordinal-rank window of representable sample points: the input clipped to
// the function's domain and to finite values, with open domain ends stepped
// inward. `skip_zero` marks a domain that excludes zero itself.
struct SampleWindow {
  BigInt lo, hi;
  bool skip_zero = false;
};

std::optional<SampleWindow> sample_window(const Interval& x, const DomainSpec& d,
                                          const Format& fmt) {
  if (x.is_empty()) return std::nullopt;
  const BigFloat fmax = BigFloat::max_finite(fmt);
  BigFloat lo = x.inf(), hi = x.sup();
  if (compare(lo, fmax.negated()) == std::partial_ordering::less) lo = fmax.negated();
  if (compare(hi, fmax) == std::partial_ordering::greater) hi = fmax;

  SampleWindow w;
  w.skip_zero = d.excludes_zero;
  bool lo_at_bound = false, hi_at_bound = false;
  if (d.lo) {
    const BigFloat b = BigFloat::from_int64(*d.lo, fmt);
    const auto c = compare(lo, b);
    if (c == std::partial_ordering::less) lo = b;
    lo_at_bound = compare(lo, b) == std::partial_ordering::equivalent;
  }
  if (d.hi) {
    const BigFloat b = BigFloat::from_int64(*d.hi, fmt);
    const auto c = compare(hi, b);
    if (c == std::partial_ordering::greater) hi = b;
    hi_at_bound = compare(hi, b) == std::partial_ordering::equivalent;
  }
  w.lo = BigFloat::ordinal(lo);
  w.hi = BigFloat::ordinal(hi);
  if (d.lo && d.lo_open && lo_at_bound) w.lo += 1;
  if (d.hi && d.hi_open && hi_at_bound) w.hi -= 1;
  if (w.lo > w.hi) return std::nullopt;
  if (w.skip_zero && w.lo == 0 && w.hi == 0) return std::nullopt;
  return w;
}

BigFloat window_point(const SampleWindow& w, int sample, Rng& g, const Format& fmt) {
  BigInt o;
  if (sample == 0) {
    o = w.lo;
    if (w.skip_zero && o == 0) o += 1;
  } else if (sample == 1) {
    o = w.hi;
    if (w.skip_zero && o == 0) o -= 1;
  } else {
    for (int tries = 0;; ++tries) {
      o = w.lo + uniform_below(g, w.hi - w.lo + 1);
      if (!(w.skip_zero && o == 0)) break;
      if (tries > 64) {
        o = w.lo != 0 ? w.lo : w.hi;
        break;
      }
    }
  }
  return BigFloat::from_ordinal(o, fmt);
}

std::string point_text(const std::vector<BigFloat>& xs) {
  std::string s;
  for (const BigFloat& x : xs) {
    if (!s.empty()) s += ", ";
    s += format_hex(x);
  }
  return s;
}

struct Outcome {
  Verdict verdict;
  std::string computed;
};

Outcome do_run_case(const TestCase& c, Adapter& a, AccuracyClaim claim,
                    const AdapterReply** reply_out, AdapterReply& reply_store) {
  reply_store = a.call(request_for(c));
  if (reply_out) *reply_out = &reply_store;
  Outcome o;
  o.verdict = judge(c, reply_store, claim);
  if (reply_store.status == AdapterReply::Status::ok)
    o.computed = render_value(reply_store.value);
  return o;
}

Outcome do_fuzz_case(const TestCase& c, Adapter& a, AccuracyClaim claim, int n,
                     std::uint64_t seed) {
  if (n < 1) throw Error("fuzz sample count must be at least 1");
  AdapterReply reply;
  Outcome base = do_run_case(c, a, claim, nullptr, reply);
  const VerdictKind k = base.verdict.kind;
  if (k == VerdictKind::skip_unsupported || k == VerdictKind::error ||
      k == VerdictKind::fail_unsound)
    return base;
  if (!c.function || c.tight.kind != TestValue::Kind::interval || !reply.value.parsed)
    return base;

  const FunctionId f = *c.function;
  const Interval& got = reply.value.parsed->interval;
  const int args = arity(f);
  std::vector<SampleWindow> windows;
  for (int i = 0; i < args; ++i) {
    if (static_cast<std::size_t>(i) >= c.input.size() || !c.input[i].parsed)
      return base;
    auto w = sample_window(c.input[i].parsed->interval, domain_of(f, i), c.format);
    if (!w) return base;  // restricted domain is empty: nothing to probe
    windows.push_back(*w);
  }

  Rng rng(seed);
  for (int s = 0; s < n; ++s) {
    std::vector<BigFloat> xs;
    xs.reserve(windows.size());
    for (const SampleWindow& w : windows)
      xs.push_back(window_point(w, s, rng, c.format));

    BigFloat lo, hi;
    try {
      const EvalOptions opts = escalation_for(xs, c.format);
      lo = eval_correctly_rounded(f, xs, c.format, RoundingDirection::down, opts);
      hi = eval_correctly_rounded(f, xs, c.format, RoundingDirection::up, opts);
    } catch (const std::exception& e) {
      base.verdict = {VerdictKind::error,
                      "point oracle failed at x = " + point_text(xs) + ": " + e.what()};
      return base;
    }
    const bool inside =
        !got.is_empty() &&
        compare(got.inf(), lo) != std::partial_ordering::greater &&
        compare(hi, got.sup()) != std::partial_ordering::greater;
    if (!inside) {
      base.verdict = {VerdictKind::fail_unsound,
                      "f(x) escapes the result at x = " + point_text(xs)};
      return base;
    }

    AdapterRequest probe = request_for(c);
    probe.input.clear();
    for (const BigFloat& x : xs)
      probe.input.push_back(
          value_from_decorated(decorated(Interval::singleton(x), Decoration::com)));
    const AdapterReply pr = a.call(probe);
    if (pr.status == AdapterReply::Status::error) {
      base.verdict = {VerdictKind::error, "adapter failed on singleton probe at x = " +
                                              point_text(xs) + ": " + pr.detail};
      return base;
    }
    if (pr.status == AdapterReply::Status::ok) {
      if (pr.value.kind != TestValue::Kind::interval || !pr.value.parsed) {
        base.verdict = {VerdictKind::error,
                        "malformed singleton result at x = " + point_text(xs)};
        return base;
      }
      if (!subset(pr.value.parsed->interval, got)) {
        base.verdict = {VerdictKind::fail_unsound,
                        "singleton result escapes the full result at x = " +
                            point_text(xs)};
        return base;
      }
    }
  }
  return base;
}

// Serializes calls to an adapter that is not safe for concurrent use while
// judgment itself stays parallel.
class SerializedAdapter final : public Adapter {
 public:
  explicit SerializedAdapter(Adapter& inner) : inner_(inner) {}
  std::string identity() const override { return inner_.identity(); }
  bool concurrent_safe() const override { return true; }
  AdapterReply call(const AdapterRequest& q) override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.call(q);
  }

 private:
  Adapter& inner_;
  std::mutex mu_;
};

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch; break;
    }
  }
  return out;
}

}  // namespace

std::string_view claim_name(AccuracyClaim c) {
  switch (c) {
    case AccuracyClaim::tight: return "tight";
    case AccuracyClaim::accurate: return "accurate";
    case AccuracyClaim::valid: return "valid";
  }
  return "tight";
}

std::optional<AccuracyClaim> claim_from_name(std::string_view name) {
  if (name == "tight") return AccuracyClaim::tight;
  if (name == "accurate") return AccuracyClaim::accurate;
  if (name == "valid") return AccuracyClaim::valid;
  return std::nullopt;
}

std::string_view verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::pass_tight: return "pass_tight";
    case VerdictKind::pass_accurate: return "pass_accurate";
    case VerdictKind::pass_valid: return "pass_valid";
    case VerdictKind::fail_unsound: return "fail_unsound";
    case VerdictKind::fail_inaccurate: return "fail_inaccurate";
    case VerdictKind::skip_unsupported: return "skip_unsupported";
    case VerdictKind::error: return "error";
  }
  return "error";
}

bool verdict_is_failure(VerdictKind k) {
  return k == VerdictKind::fail_unsound || k == VerdictKind::fail_inaccurate ||
         k == VerdictKind::error;
}

AdapterReply BuiltinAdapter::call(const AdapterRequest& req) {
  AdapterReply r;
  const auto f = function_from_name(req.function);
  if (!f) {
    r.status = AdapterReply::Status::unsupported;
    return r;
  }
  if (static_cast<int>(req.input.size()) != arity(*f)) {
    r.status = AdapterReply::Status::error;
    r.detail = "expected " + std::to_string(arity(*f)) + " inputs, got " +
               std::to_string(req.input.size());
    return r;
  }
  std::vector<DecoratedInterval> args;
  args.reserve(req.input.size());
  for (const TestValue& v : req.input) {
    if (v.kind != TestValue::Kind::interval || !v.parsed) {
      r.status = AdapterReply::Status::error;
      r.detail = "non-interval or unparsed input";
      return r;
    }
    args.push_back(*v.parsed);
  }
  try {
    r.value = value_from_decorated(eval_decorated(*f, args, req.format));
    r.status = AdapterReply::Status::ok;
  } catch (const std::exception& e) {
    r.status = AdapterReply::Status::error;
    r.detail = e.what();
  }
  return r;
}

SubprocessAdapter::SubprocessAdapter(std::vector<std::string> argv,
                                     double timeout_seconds)
    : argv_(std::move(argv)), timeout_(timeout_seconds) {
  if (argv_.empty()) throw Error("subprocess adapter needs a command");
  // A dying child must surface as a read/write error, not kill the harness.
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

SubprocessAdapter::~SubprocessAdapter() { shutdown(); }

std::string SubprocessAdapter::identity() const {
  std::string s = "cmd:";
  for (std::size_t i = 0; i < argv_.size(); ++i) {
    if (i) s += ' ';
    s += argv_[i];
  }
  return s;
}

bool SubprocessAdapter::ensure_running(std::string* why) {
  if (pid_ > 0) return true;
  int to_pipe[2] = {-1, -1}, from_pipe[2] = {-1, -1};
  if (::pipe(to_pipe) != 0 || ::pipe(from_pipe) != 0) {
    if (to_pipe[0] >= 0) { ::close(to_pipe[0]); ::close(to_pipe[1]); }
    *why = std::string("pipe: ") + std::strerror(errno);
    return false;
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_pipe[0], to_pipe[1], from_pipe[0], from_pipe[1]}) ::close(fd);
    *why = std::string("fork: ") + std::strerror(errno);
    return false;
  }
  if (pid == 0) {
    ::dup2(to_pipe[0], STDIN_FILENO);
    ::dup2(from_pipe[1], STDOUT_FILENO);
    for (int fd : {to_pipe[0], to_pipe[1], from_pipe[0], from_pipe[1]}) ::close(fd);
    std::vector<char*> cargv;
    cargv.reserve(argv_.size() + 1);
    for (std::string& a : argv_) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::close(to_pipe[0]);
  ::close(from_pipe[1]);
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  ::fcntl(from_child_, F_SETFL, O_NONBLOCK);
  pid_ = pid;
  buffer_.clear();
  return true;
}

void SubprocessAdapter::shutdown() noexcept {
  if (to_child_ >= 0) ::close(to_child_);
  to_child_ = -1;
  if (pid_ > 0) {
    // stdin is closed; give a well-behaved child a moment to exit on EOF.
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 20 && !reaped; ++i) {
      if (::waitpid(static_cast<pid_t>(pid_), &status, WNOHANG) > 0)
        reaped = true;
      else
        ::usleep(10000);
    }
    if (!reaped) {
      ::kill(static_cast<pid_t>(pid_), SIGKILL);
      ::waitpid(static_cast<pid_t>(pid_), &status, 0);
    }
  }
  pid_ = -1;
  if (from_child_ >= 0) ::close(from_child_);
  from_child_ = -1;
  buffer_.clear();
}

std::optional<std::string> SubprocessAdapter::read_line(double deadline_seconds) {
  using clock = std::chrono::steady_clock;
  const auto deadline =
      clock::now() + std::chrono::duration_cast<clock::duration>(
                         std::chrono::duration<double>(deadline_seconds));
  for (;;) {
    const std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto remaining = deadline - clock::now();
    if (remaining <= clock::duration::zero()) return std::nullopt;
    const int ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(remaining).count() + 1);
    struct pollfd pfd = {from_child_, POLLIN, 0};
    const int pr = ::poll(&pfd, 1, ms);
    if (pr < 0 && errno != EINTR) return std::nullopt;
    if (pr <= 0) continue;
    char chunk[65536];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
    } else if (n == 0) {
      return std::nullopt;  // child closed its stdout
    } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
      return std::nullopt;
    }
  }
}

AdapterReply SubprocessAdapter::call(const AdapterRequest& req) {
  AdapterReply r;
  std::string why;
  if (!ensure_running(&why)) {
    r.detail = "cannot start adapter: " + why;
    return r;
  }
  const std::uint64_t id = next_id_++;
  ordered_json jq;
  jq["id"] = id;
  jq["function"] = req.function;
  jq["precision"] = req.precision;
  if (req.format_hint) jq["format_hint"] = *req.format_hint;
  jq["input"] = ordered_json::array();
  for (const TestValue& v : req.input)
    jq["input"].push_back(ordered_json::parse(value_to_json_text(v)));
  const std::string line = jq.dump() + "\n";

  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(to_child_, line.data() + written, line.size() - written);
    if (n > 0) {
      written += static_cast<std::size_t>(n);
    } else if (errno != EINTR) {
      shutdown();
      r.detail = "write to adapter failed: " + std::string(std::strerror(errno));
      return r;
    }
  }

  const auto resp = read_line(timeout_);
  if (!resp) {
    shutdown();
    std::ostringstream os;
    os << "no response within " << timeout_ << "s (or adapter exited)";
    r.detail = os.str();
    return r;
  }

  const json jr = json::parse(*resp, nullptr, false);
  if (jr.is_discarded() || !jr.is_object()) {
    shutdown();
    r.detail = "malformed response: not a JSON object";
    return r;
  }
  if (!jr.contains("id") || !jr["id"].is_number_unsigned() ||
      jr["id"].get<std::uint64_t>() != id) {
    shutdown();
    r.detail = "response id mismatch";
    return r;
  }
  const std::string status =
      jr.contains("status") && jr["status"].is_string() ? jr["status"].get<std::string>() : "";
  if (status == "unsupported") {
    r.status = AdapterReply::Status::unsupported;
    return r;
  }
  if (status == "error") {
    r.detail = jr.contains("detail") && jr["detail"].is_string()
                   ? jr["detail"].get<std::string>()
                   : "adapter reported an error";
    return r;
  }
  if (status != "ok" || !jr.contains("value")) {
    shutdown();
    r.detail = "malformed response: expected status ok/unsupported/error with a value";
    return r;
  }
  try {
    r.value = parse_value_json(jr["value"].dump(), req.format);
    r.status = AdapterReply::Status::ok;
  } catch (const std::exception& e) {
    // The stream is still in sync; only this call degrades.
    r.status = AdapterReply::Status::error;
    r.detail = std::string("malformed response value: ") + e.what();
  }
  return r;
}

Verdict run_case(const TestCase& c, Adapter& a, AccuracyClaim claim) {
  AdapterReply reply;
  return do_run_case(c, a, claim, nullptr, reply).verdict;
}

Verdict fuzz_case(const TestCase& c, Adapter& a, AccuracyClaim claim, int n,
                  std::uint64_t seed) {
  return do_fuzz_case(c, a, claim, n, seed).verdict;
}

Report run_suite(const TestSuite& s, Adapter& a, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.suite_name = s.source_name;
  rep.adapter = a.identity();
  rep.claim = opts.claim;
  rep.seed = opts.seed;
  rep.fuzz = opts.fuzz;
  rep.cases.resize(s.cases.size());

  const int jobs = std::max(1, opts.jobs);
  SerializedAdapter serialized(a);
  Adapter& shared = (jobs > 1 && !a.concurrent_safe())
                        ? static_cast<Adapter&>(serialized)
                        : a;

  auto work_one = [&](std::size_t i) {
    const TestCase& c = s.cases[i];
    CaseResult& out = rep.cases[i];
    out.index = i;
    out.function = c.function_text;
    out.expected_tight = render_value(c.tight);
    if (c.accurate) out.expected_accurate = render_value(*c.accurate);

    std::string fatal;
    for (const Issue& issue : validate_case(c)) {
      if (!issue.fatal) continue;
      if (!fatal.empty()) fatal += "; ";
      fatal += issue.message;
    }
    if (!fatal.empty()) {
      out.verdict = {VerdictKind::error, "invalid case: " + fatal};
      return;
    }

    const bool fuzzable = opts.fuzz >= 1 && c.function.has_value() &&
                          c.tight.kind == TestValue::Kind::interval &&
                          !c.input.empty();
    try {
      AdapterReply reply;
      Outcome o = fuzzable ? do_fuzz_case(c, shared, opts.claim, opts.fuzz,
                                          case_seed(opts.seed, i))
                           : do_run_case(c, shared, opts.claim, nullptr, reply);
      out.verdict = std::move(o.verdict);
      out.computed = std::move(o.computed);
    } catch (const std::exception& e) {
      out.verdict = {VerdictKind::error, e.what()};
    }
  };

  if (jobs == 1 || s.cases.size() <= 1) {
    for (std::size_t i = 0; i < s.cases.size(); ++i) work_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= s.cases.size()) return;
        work_one(i);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t nw = std::min<std::size_t>(jobs, s.cases.size());
    pool.reserve(nw);
    for (std::size_t t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const CaseResult& cr : rep.cases) {
    rep.verdict_counts[std::string(verdict_name(cr.verdict.kind))]++;
    rep.function_verdicts[cr.function][std::string(verdict_name(cr.verdict.kind))]++;
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

bool report_has_failures(const Report& r) {
  for (const CaseResult& c : r.cases)
    if (verdict_is_failure(c.verdict.kind)) return true;
  return false;
}

std::string report_to_json(const Report& r) {
  ordered_json j;
  j["suite"] = r.suite_name;
  j["adapter"] = r.adapter;
  j["claim"] = std::string(claim_name(r.claim));
  j["seed"] = r.seed;
  j["fuzz"] = r.fuzz;
  j["summary"]["cases"] = r.cases.size();
  j["summary"]["verdicts"] = ordered_json::object();
  for (const auto& [name, count] : r.verdict_counts)
    j["summary"]["verdicts"][name] = count;
  j["summary"]["functions"] = ordered_json::object();
  for (const auto& [fn, verdicts] : r.function_verdicts) {
    ordered_json v = ordered_json::object();
    for (const auto& [name, count] : verdicts) v[name] = count;
    j["summary"]["functions"][fn] = std::move(v);
  }
  j["cases"] = ordered_json::array();
  for (const CaseResult& c : r.cases) {
    ordered_json e;
    e["index"] = c.index;
    e["function"] = c.function;
    e["verdict"] = std::string(verdict_name(c.verdict.kind));
    if (!c.verdict.detail.empty()) e["detail"] = c.verdict.detail;
    if (!c.computed.empty()) e["computed"] = c.computed;
    e["expected_tight"] = c.expected_tight;
    if (!c.expected_accurate.empty()) e["expected_accurate"] = c.expected_accurate;
    j["cases"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string report_to_junit(const Report& r) {
  std::size_t failures = 0, errors = 0, skipped = 0;
  for (const CaseResult& c : r.cases) {
    switch (c.verdict.kind) {
      case VerdictKind::fail_unsound:
      case VerdictKind::fail_inaccurate: ++failures; break;
      case VerdictKind::error: ++errors; break;
      case VerdictKind::skip_unsupported: ++skipped; break;
      default: break;
    }
  }
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuites tests=\"" << r.cases.size() << "\" failures=\"" << failures
     << "\" errors=\"" << errors << "\" skipped=\"" << skipped << "\">\n";
  os << "  <testsuite name=\"" << xml_escape(r.suite_name) << "\" tests=\""
     << r.cases.size() << "\" failures=\"" << failures << "\" errors=\"" << errors
     << "\" skipped=\"" << skipped << "\">\n";
  for (const CaseResult& c : r.cases) {
    os << "    <testcase name=\"" << xml_escape(c.function) << "[" << c.index
       << "]\" classname=\"ivalkit." << claim_name(r.claim) << "\"";
    const VerdictKind k = c.verdict.kind;
    if (k == VerdictKind::fail_unsound || k == VerdictKind::fail_inaccurate) {
      os << ">\n      <failure type=\"" << verdict_name(k) << "\" message=\""
         << xml_escape(c.verdict.detail) << "\"/>\n    </testcase>\n";
    } else if (k == VerdictKind::error) {
      os << ">\n      <error message=\"" << xml_escape(c.verdict.detail)
         << "\"/>\n    </testcase>\n";
    } else if (k == VerdictKind::skip_unsupported) {
      os << ">\n      <skipped/>\n    </testcase>\n";
    } else {
      os << "/>\n";
    }
  }
  os << "  </testsuite>\n</testsuites>\n";
  return os.str();
}

}  // namespace ivalkit
