// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <benchmark/benchmark.h>

#include "qvote/experiment.hpp"
#include "qvote/owqc.hpp"
#include "qvote/rng.hpp"
#include "qvote/state_vector.hpp"

using namespace qvote;

static void BM_HadamardSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sim::StateVector sv(n);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) sv.apply_h(q);
    benchmark::DoNotOptimize(sv.amp(0));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HadamardSweep)->Arg(8)->Arg(12)->Arg(16);

static void BM_CnotChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sim::StateVector sv(n);
  sv.apply_h(0);
  for (auto _ : state) {
    for (int q = 0; q + 1 < n; ++q) sv.apply_cnot(q, q + 1);
    benchmark::DoNotOptimize(sv.amp(0));
  }
  state.SetItemsProcessed(state.iterations() * (n - 1));
}
BENCHMARK(BM_CnotChain)->Arg(8)->Arg(12)->Arg(16);

static void BM_MeasureWithErrors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(7, 7);
  const auto p = sim::FlipRates::symmetric(0.05);
  const auto r = sim::FlipRates::symmetric(0.02);
  for (auto _ : state) {
    sim::StateVector sv(n);
    sv.apply_h(0);
    for (int q = 0; q + 1 < n; ++q) sv.apply_cnot(q, q + 1);
    benchmark::DoNotOptimize(sim::measure_with_errors(sv, 0, p, r, rng));
  }
}
BENCHMARK(BM_MeasureWithErrors)->Arg(4)->Arg(10);

static void BM_OwqcShot(benchmark::State& state) {
  const int register_size = static_cast<int>(state.range(0));
  RngStream rng(11, 3);
  owqc::ErrorModel model;
  model.base.projection = sim::FlipRates::symmetric(0.05);
  model.cnot_gamma = 0.005;
  const owqc::VerificationTopology topology{owqc::VerificationTopology::Kind::log_depth,
                                            register_size};
  for (auto _ : state) {
    benchmark::DoNotOptimize(owqc::run_owqc_shot(0.8, model, topology, rng));
  }
}
BENCHMARK(BM_OwqcShot)->Arg(0)->Arg(2)->Arg(6)->Arg(10);

static void BM_RunExperiment(benchmark::State& state) {
  mc::ExperimentConfig config;
  config.kind = mc::ExperimentKind::projection_mitigation;
  config.p_values = {0.05};
  config.register_sizes = {2};
  config.runs = 100;
  config.repetitions = static_cast<int>(state.range(0));
  config.master_seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::run_experiment(config, 4));
  }
  state.SetItemsProcessed(state.iterations() * config.runs * config.repetitions);
}
BENCHMARK(BM_RunExperiment)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
