// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.
//
// Command-line front end: `run` judges a suite against an adapter,
// `generate` derives expected outputs for chosen inputs or a category
// preset, `find-hard` scans a binade slice for hard-to-round arguments.
// Exit codes: 0 clean, 1 failing or error verdicts, 2 usage or I/O trouble.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ivalkit/errors.hpp"
#include "ivalkit/generator.hpp"
#include "ivalkit/harness.hpp"

using namespace ivalkit;

namespace {

[[noreturn]] void die(const std::string& message) {
  std::cerr << "ivalkit: " << message << "\n";
  std::exit(2);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) die("cannot write " + path);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

FunctionId function_or_die(const std::string& name) {
  const auto f = function_from_name(name);
  if (!f) die("unknown function '" + name + "'");
  return *f;
}

Format resolve_format(int precision, const std::string& hint) {
  if (hint == "binary64") {
    if (precision != 0 && precision != 53)
      die("--format-hint binary64 fixes the precision at 53");
    return Format::binary64();
  }
  if (hint == "binary32") {
    if (precision != 0 && precision != 24)
      die("--format-hint binary32 fixes the precision at 24");
    return Format::binary32();
  }
  if (!hint.empty()) die("--format-hint must be binary32 or binary64");
  const int p = precision == 0 ? 53 : precision;
  if (p < 2 || p > (1 << 22)) die("--precision out of range");
  return Format::wide(p);
}

// "[a,b]" or "[a,b)": a binade slice; a ")" end excludes the bound itself.
SearchRange parse_range(const std::string& text, const Format& fmt) {
  std::string s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  if (s.size() < 5 || (s.front() != '[' && s.front() != '(') ||
      (s.back() != ']' && s.back() != ')'))
    die("--range must look like \"[lo,hi)\" or \"[lo,hi]\"");
  const bool lo_excl = s.front() == '(';
  const bool hi_excl = s.back() == ')';
  const std::string inner = s.substr(1, s.size() - 2);
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos) die("--range needs two comma-separated bounds");
  try {
    const std::string lo_text = inner.substr(0, comma);
    const std::string hi_text = inner.substr(comma + 1);
    BigFloat t0 = parse_number(lo_text, fmt, RoundingDirection::up);
    if (lo_excl && parse_number(lo_text, fmt, RoundingDirection::down) == t0)
      t0 = next(t0, RoundingDirection::up);
    BigFloat t1 = parse_number(hi_text, fmt, RoundingDirection::down);
    if (hi_excl && parse_number(hi_text, fmt, RoundingDirection::up) == t1)
      t1 = next(t1, RoundingDirection::down);
    return SearchRange{std::move(t0), std::move(t1), fmt};
  } catch (const std::exception& e) {
    die(std::string("bad --range: ") + e.what());
  }
}

int cmd_run(const std::string& suite_path, const std::string& claim_text,
            const std::string& adapter_text, int fuzz, std::uint64_t seed, int jobs,
            const std::string& report_path, const std::string& junit_path) {
  const auto claim = claim_from_name(claim_text);
  if (!claim) die("--claim must be tight, accurate, or valid");

  TestSuite suite;
  try {
    suite = load_suite(suite_path);
  } catch (const std::exception& e) {
    die(std::string("cannot load suite: ") + e.what());
  }

  std::unique_ptr<Adapter> adapter;
  if (adapter_text == "builtin") {
    adapter = std::make_unique<BuiltinAdapter>();
  } else if (adapter_text.rfind("cmd:", 0) == 0) {
    const auto argv = split_ws(adapter_text.substr(4));
    if (argv.empty()) die("--adapter cmd: needs a command");
    adapter = std::make_unique<SubprocessAdapter>(argv);
  } else {
    die("--adapter must be builtin or cmd:<argv>");
  }

  RunOptions opts;
  opts.claim = *claim;
  opts.fuzz = fuzz;
  opts.seed = seed;
  opts.jobs = jobs;
  const Report report = run_suite(suite, *adapter, opts);

  std::cout << "suite " << report.suite_name << ": " << report.cases.size()
            << " cases, adapter " << report.adapter << ", claim "
            << claim_name(report.claim) << ", seed " << report.seed << ", fuzz "
            << report.fuzz << "\n";
  for (const auto& [name, count] : report.verdict_counts)
    std::cout << "  " << name << ": " << count << "\n";
  for (const CaseResult& c : report.cases) {
    if (!verdict_is_failure(c.verdict.kind)) continue;
    std::cout << "  [" << c.index << "] " << c.function << ": "
              << verdict_name(c.verdict.kind)
              << (c.verdict.detail.empty() ? "" : " (" + c.verdict.detail + ")") << "\n";
  }
  std::cout << "wall time: " << report.wall_seconds << " s\n";

  if (!report_path.empty()) write_file(report_path, report_to_json(report));
  if (!junit_path.empty()) write_file(junit_path, report_to_junit(report));
  return report_has_failures(report) ? 1 : 0;
}

int cmd_generate(const std::string& function, const std::vector<std::string>& inputs,
                 int precision, const std::string& hint, const std::string& category,
                 const std::string& comment, const std::string& out_path) {
  const FunctionId f = function_or_die(function);
  const Format fmt = resolve_format(precision, hint);

  TestSuite suite;
  suite.source_name = out_path;
  try {
    if (!category.empty()) {
      const auto cat = category_from_name(category);
      if (!cat) die("--category must be easy, special, or exceptional");
      if (!inputs.empty()) die("--category and --input are mutually exclusive");
      suite.cases = emit_category_cases(f, fmt, *cat);
    } else {
      if (static_cast<int>(inputs.size()) != arity(f))
        die(function + " takes " + std::to_string(arity(f)) +
            " --input interval(s)");
      std::vector<DecoratedInterval> parsed;
      for (const std::string& text : inputs)
        parsed.push_back(parse_interval_literal(text, fmt));
      suite.cases.push_back(make_case(
          f, parsed, fmt,
          comment.empty() ? std::nullopt : std::optional<std::string>(comment)));
    }
    save_suite(suite, out_path);
  } catch (const std::exception& e) {
    die(std::string("generate failed: ") + e.what());
  }
  std::cout << "wrote " << suite.cases.size() << " case(s) to " << out_path << "\n";
  return 0;
}

int cmd_find_hard(const std::string& function, int precision, const std::string& range,
                  int hardness, const std::string& runs, int jobs,
                  std::int64_t budget, const std::string& out_path) {
  const FunctionId f = function_or_die(function);
  if (precision == 0) die("--precision is required");
  const Format fmt = resolve_format(precision, "");
  const SearchRange r = parse_range(range, fmt);

  RunFilter filter = RunFilter::both;
  if (runs == "zeros") filter = RunFilter::zeros;
  else if (runs == "ones") filter = RunFilter::ones;
  else if (runs != "both") die("--runs must be zeros, ones, or both");

  HardSearchOptions opts;
  opts.jobs = jobs;
  opts.budget = budget;
  std::vector<HardCase> cases;
  try {
    cases = find_hard_cases(f, r, hardness, filter, opts);
  } catch (const std::exception& e) {
    die(std::string("search failed: ") + e.what());
  }

  TestSuite suite = hard_cases_to_suite(cases, fmt);
  suite.source_name = out_path;
  std::string meta_path = out_path;
  const std::string suffix = ".json";
  if (meta_path.size() > suffix.size() &&
      meta_path.compare(meta_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    meta_path.resize(meta_path.size() - suffix.size());
  meta_path += ".meta.json";
  try {
    save_suite(suite, out_path);
    write_file(meta_path, hard_cases_metadata_json(f, r, hardness, cases));
  } catch (const std::exception& e) {
    die(std::string("cannot write results: ") + e.what());
  }
  std::cout << "found " << cases.size() << " hard case(s); wrote " << out_path
            << " and " << meta_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IEEE 1788-2015 interval arithmetic conformance toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "judge a suite against an adapter");
  std::string suite_path, claim = "tight", adapter = "builtin", report, junit;
  int fuzz = 0, jobs = 1;
  std::uint64_t seed = 0;
  run->add_option("suite", suite_path, "suite JSON file")->required();
  run->add_option("--claim", claim, "accuracy claim: tight|accurate|valid");
  run->add_option("--adapter", adapter, "builtin or cmd:<argv>");
  run->add_option("--fuzz", fuzz, "contained-point probes per case")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "fuzz seed");
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--report", report, "write a JSON report here");
  run->add_option("--junit", junit, "write JUnit XML here");

  auto* gen = app.add_subcommand("generate", "derive expected outputs for cases");
  std::string g_function, g_hint, g_category, g_comment, g_out;
  std::vector<std::string> g_inputs;
  int g_precision = 0;
  gen->add_option("--function", g_function, "function name")->required();
  // Raw capture: bracketed literals must not hit CLI11's array expansion.
  gen->add_option("--input", "input interval literal, repeat for two-argument functions")
      ->take_all()
      ->each([&g_inputs](const std::string& s) { g_inputs.push_back(s); });
  gen->add_option("--precision", g_precision, "target precision in bits");
  gen->add_option("--format-hint", g_hint, "binary32 or binary64");
  gen->add_option("--category", g_category,
                  "emit a preset family: easy|special|exceptional");
  gen->add_option("--comment", g_comment, "case comment");
  gen->add_option("--out", g_out, "output suite file")->required();

  auto* hard = app.add_subcommand("find-hard", "scan a binade for hard-to-round args");
  std::string h_function, h_range, h_runs = "both", h_out;
  int h_precision = 0, h_hardness = 0, h_jobs = 1;
  std::int64_t h_budget = std::int64_t(1) << 22;
  hard->add_option("--function", h_function, "unary function name")->required();
  hard->add_option("--precision", h_precision, "argument precision in bits")->required();
  hard->add_option("--range", h_range, "binade slice, e.g. \"[1,2)\"")->required();
  hard->add_option("--hardness", h_hardness, "minimum run length after the target bit")
      ->required()
      ->check(CLI::PositiveNumber);
  hard->add_option("--runs", h_runs, "run kinds to keep: zeros|ones|both");
  hard->add_option("--jobs", h_jobs, "worker threads")->check(CLI::PositiveNumber);
  hard->add_option("--budget", h_budget, "largest allowed argument count");
  hard->add_option("--out", h_out, "output suite file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(suite_path, claim, adapter, fuzz, seed, jobs, report, junit);
    if (gen->parsed())
      return cmd_generate(g_function, g_inputs, g_precision, g_hint, g_category,
                          g_comment, g_out);
    if (hard->parsed())
      return cmd_find_hard(h_function, h_precision, h_range, h_hardness, h_runs,
                           h_jobs, h_budget, h_out);
  } catch (const std::exception& e) {
    die(e.what());
  }
  return 2;
}
