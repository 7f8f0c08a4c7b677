// Copyright 2026 the ivalkit authors.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <benchmark/benchmark.h>

#include "ivalkit/generator.hpp"
#include "ivalkit/interval.hpp"
#include "ivalkit/pointfuncs.hpp"

using namespace ivalkit;

namespace {

const Format b64 = Format::binary64();

BigFloat bf(const char* text, const Format& f) {
  return parse_number(text, f, RoundingDirection::nearest_even);
}

void BM_FaithfulExp(benchmark::State& state) {
  const std::int64_t q = state.range(0);
  const BigFloat x = bf("0.5", b64);
  for (auto _ : state) {
    Bracket b = eval_faithful(FunctionId::exp, {x}, q);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_FaithfulExp)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_FaithfulSinLargeArg(benchmark::State& state) {
  // Dominated by argument reduction against a pi enclosure.
  const BigFloat x = bf("0x1p60", b64);
  for (auto _ : state) {
    Bracket b = eval_faithful(FunctionId::sin, {x}, state.range(0));
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_FaithfulSinLargeArg)->Arg(64)->Arg(1024);

void BM_CorrectlyRounded(benchmark::State& state) {
  const Format f = Format::wide(static_cast<int>(state.range(0)));
  const BigFloat x = bf("0.5", f);
  for (auto _ : state) {
    BigFloat v = eval_correctly_rounded(FunctionId::exp, {x}, f,
                                        RoundingDirection::down);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CorrectlyRounded)->Arg(24)->Arg(53)->Arg(113)->Arg(237);

void BM_IntervalExp(benchmark::State& state) {
  const Interval x(bf("1", b64), bf("2", b64));
  for (auto _ : state) {
    Interval v = eval_interval(FunctionId::exp, {x}, b64);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_IntervalExp);

void BM_IntervalMul(benchmark::State& state) {
  const Interval a(bf("-1", b64), bf("2", b64));
  const Interval b(bf("-3", b64), bf("4", b64));
  for (auto _ : state) {
    Interval v = eval_interval(FunctionId::mul, {a, b}, b64);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_IntervalMul);

void BM_DecoratedAtanh(benchmark::State& state) {
  // Domain restriction plus decoration bookkeeping on a clipped input.
  const DecoratedInterval x = parse_interval_literal("[0,1]", b64);
  for (auto _ : state) {
    DecoratedInterval v = eval_decorated(FunctionId::atanh, {x}, b64);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DecoratedAtanh);

void BM_HardScan(benchmark::State& state) {
  // Per-argument cost of the exhaustive scan, amortized over a small window.
  const Format w12 = Format::wide(12);
  const BigFloat t0 = bf("1", w12);
  BigFloat t1 = t0;
  for (int i = 0; i < 255; ++i) t1 = next(t1, RoundingDirection::up);
  const SearchRange r{t0, t1, w12};
  for (auto _ : state) {
    auto hits = find_hard_cases(FunctionId::exp, r, 8);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_HardScan);

}  // namespace

BENCHMARK_MAIN();
