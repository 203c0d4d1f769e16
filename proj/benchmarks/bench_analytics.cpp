// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cmath>

#include <benchmark/benchmark.h>

#include "qvote/regimes.hpp"
#include "qvote/special_functions.hpp"
#include "qvote/voting.hpp"

using namespace qvote::analytics;

static void BM_RegIncBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_inc_beta(0.06, a, a));
  }
}
BENCHMARK(BM_RegIncBeta)->Arg(2)->Arg(33)->Arg(501);

static void BM_MisidProb(benchmark::State& state) {
  const VoteCount n(static_cast<int>(state.range(0)));
  const ReadoutError r(0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(misid_prob(n, r));
  }
}
BENCHMARK(BM_MisidProb)->Arg(3)->Arg(65)->Arg(1001);

static void BM_LambertW0(benchmark::State& state) {
  const double z = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(z));
  }
}
BENCHMARK(BM_LambertW0)->Arg(-2)->Arg(2)->Arg(15);

static void BM_RequiredNExact(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(required_n_exact(eps, ReadoutError(0.05)));
  }
}
BENCHMARK(BM_RequiredNExact)->Arg(4)->Arg(10)->Arg(20);

static void BM_CriticalGammaAny(benchmark::State& state) {
  const ReadoutError r(0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_gamma_any(r, VoteCount(static_cast<int>(state.range(0)))));
  }
}
BENCHMARK(BM_CriticalGammaAny)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
