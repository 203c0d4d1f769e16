// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/experiment.hpp"

#include <cmath>

#include <doctest.h>

#include "qvote/sweep_io.hpp"
#include "qvote/voting.hpp"
#include "oracles.hpp"

using namespace qvote::mc;
using qvote::analytics::misid_prob;
using qvote::analytics::ReadoutError;
using qvote::analytics::VoteCount;

namespace {

ExperimentConfig small_mitigation_config() {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.0, 0.05};
  config.register_sizes = {0, 2};
  config.alphas = {0.6};
  config.runs = 50;
  config.repetitions = 40;
  config.master_seed = 7;
  return config;
}

}  // namespace

TEST_CASE("zero noise means zero rate, exactly") {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.0};
  config.register_sizes = {0, 2, 4};
  config.runs = 20;
  config.repetitions = 10;
  const SweepTable table = run_experiment(config);
  REQUIRE(table.rows.size() == 3);
  for (const SweepRow& row : table.rows) {
    CHECK(row.value == 0.0);
    CHECK(row.sem == 0.0);
    CHECK(row.samples == 200);
  }
}

TEST_CASE("projection mitigation tracks the binomial tail") {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.05};
  config.register_sizes = {2};
  config.runs = 100;
  config.repetitions = 1000;  // 1e5 samples
  config.master_seed = 11;
  const SweepTable table = run_experiment(config, 4);
  REQUIRE(table.rows.size() == 1);
  const double expected = misid_prob(VoteCount(3), ReadoutError(0.05));
  CHECK(std::fabs(table.rows[0].value - expected) <=
        3.0 * std::max(table.rows[0].sem, 1e-12));
}

TEST_CASE("readout voting kind matches its closed form") {
  ExperimentConfig config;
  config.kind = ExperimentKind::readout_voting;
  config.r_values = {0.1};
  config.vote_counts = {1, 3, 5};
  config.runs = 100;
  config.repetitions = 500;
  config.master_seed = 3;
  const SweepTable table = run_experiment(config, 2);
  REQUIRE(table.rows.size() == 3);
  const double expected[] = {0.1, 0.028, 0.00856};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(table.rows[i].value - expected[i]) <= 3.0 * table.rows[i].sem);
  }
}

TEST_CASE("analytic sweep rows are closed-form values with zero spread") {
  ExperimentConfig config;
  config.kind = ExperimentKind::analytic_sweep;
  config.r_values = {0.01, 0.1};
  config.gamma_values = {0.0, 0.02};
  config.vote_counts = {1, 3, 25};
  const SweepTable table = run_experiment(config);
  REQUIRE(table.rows.size() == 12);
  for (const SweepRow& row : table.rows) {
    CHECK(row.sem == 0.0);
    CHECK(row.samples == 0);
  }
  // gamma = 0 rows are plain voting probabilities.
  CHECK(param_as_double(table.rows[0].params, "r") == 0.01);
  CHECK(table.rows[1].value == doctest::Approx(misid_prob(VoteCount(3), ReadoutError(0.01))));
}

TEST_CASE("bernoulli toy: mean converges and 3-SEM covers") {
  int covered = 0;
  const double q = 0.3;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ExperimentConfig config;
    config.kind = ExperimentKind::bernoulli_toy;
    config.q_values = {q};
    config.runs = 50;
    config.repetitions = 40;
    config.master_seed = seed;
    const SweepTable table = run_experiment(config);
    REQUIRE(table.rows.size() == 1);
    if (std::fabs(table.rows[0].value - q) <= 3.0 * table.rows[0].sem) ++covered;
  }
  CHECK(covered >= 99);
}

TEST_CASE("identical configs are bit-identical across worker counts") {
  const ExperimentConfig config = small_mitigation_config();
  const SweepTable serial = run_experiment(config, 1);
  const SweepTable four = run_experiment(config, 4);
  const SweepTable eight = run_experiment(config, 8);
  CHECK(serial == four);
  CHECK(serial == eight);
  CHECK(to_json(serial) == to_json(eight));
}

TEST_CASE("owqc end-to-end metrics") {
  ExperimentConfig config;
  config.kind = ExperimentKind::owqc_end_to_end;
  config.p_values = {0.05};
  config.register_sizes = {0, 2};
  config.alphas = {0.3, 2.2};
  config.runs = 50;
  config.repetitions = 200;
  config.master_seed = 17;
  config.metric = OwqcMetric::misidentification;
  const SweepTable table = run_experiment(config, 4);
  REQUIRE(table.rows.size() == 4);
  // Rows: (#V=0, a=0.3), (#V=0, a=2.2), (#V=2, a=0.3), (#V=2, a=2.2).
  const double bare = 0.5 * (table.rows[0].value + table.rows[1].value);
  const double mitigated = 0.5 * (table.rows[2].value + table.rows[3].value);
  CHECK(mitigated < bare);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.register_sizes = {1};  // odd register -> even votes
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.register_sizes = {20};
  CHECK_THROWS_AS(config.validate(), ResourceLimitError);
  config.register_sizes = {2};
  config.p_values = {1.2};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.p_values = {0.1};
  config.runs = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.runs = 10;
  config.validate();

  ExperimentConfig voting;
  voting.kind = ExperimentKind::readout_voting;
  voting.vote_counts = {2};
  CHECK_THROWS_AS(voting.validate(), ConfigError);
}

TEST_CASE("compare_to_prediction scores and reacts to a wrong predictor") {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.02, 0.05};
  config.register_sizes = {2, 4};
  config.runs = 100;
  config.repetitions = 250;
  config.master_seed = 23;
  const SweepTable table = run_experiment(config, 4);

  const PredictionReport report = compare_to_prediction(table, Predictor::voting);
  CHECK(report.pass_fraction == 1.0);

  // Halve the rates: the predictions go far off and most rows must fail.
  SweepTable skewed = table;
  for (SweepRow& row : skewed.rows) {
    row.params["p"] = param_as_double(row.params, "p") * 0.5;
  }
  const PredictionReport bad = compare_to_prediction(skewed, Predictor::voting);
  CHECK(bad.pass_count * 2 < bad.rows.size());
}

TEST_CASE("compare_to_prediction on a noiseless table is trivially green") {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.0};
  config.register_sizes = {2};
  config.runs = 10;
  config.repetitions = 5;
  const SweepTable table = run_experiment(config);
  const PredictionReport report = compare_to_prediction(table, Predictor::voting);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].z == 0.0);
  CHECK(report.rows[0].pass);
}

TEST_CASE("rare-event rows do not fail on a degenerate SEM") {
  // 200 samples at rate ~3e-4: almost surely zero hits, empirical SEM 0.
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.01};
  config.register_sizes = {4};
  config.runs = 20;
  config.repetitions = 10;
  config.master_seed = 29;
  const SweepTable table = run_experiment(config);
  const PredictionReport report = compare_to_prediction(table, Predictor::voting);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].pass);
  CHECK(report.rows[0].sem_used > 0.0);
}

TEST_CASE("calibration-driven sweep improves with a register") {
  qvote::calib::CalibrationFile calib;
  for (int id = 0; id < 4; ++id) {
    calib.qubits.push_back({id, 0.01 + 0.005 * id, 0.04 + 0.01 * id});
  }
  calib.cnot_pairs.push_back({0, 2, 0.004});
  calib.cnot_pairs.push_back({0, 3, 0.006});

  ExperimentConfig config;
  config.kind = ExperimentKind::owqc_end_to_end;
  config.register_sizes = {0, 2};
  config.alphas = {1.0};
  config.runs = 100;
  config.repetitions = 300;
  config.master_seed = 31;
  config.calibration = calib;
  const SweepTable table = run_experiment(config, 4);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1].value < table.rows[0].value);
  // Rows advertise the calibration medians.
  CHECK(param_as_double(table.rows[0].params, "gamma") == doctest::Approx(0.005));
}

TEST_CASE("analytic sweep reproduces the misidentification curves pointwise") {
  // Log-spaced base rates from 1e-4 up to 0.5 against every odd register
  // size through 25, the grid the curves get plotted from.
  ExperimentConfig config;
  config.kind = ExperimentKind::analytic_sweep;
  config.r_values.clear();
  for (int i = 0; i <= 36; ++i) {
    config.r_values.push_back(std::pow(10.0, -4.0 + i * (std::log10(0.5) + 4.0) / 36.0));
  }
  config.vote_counts.clear();
  for (int n = 1; n <= 25; n += 2) config.vote_counts.push_back(n);
  const SweepTable table = run_experiment(config);
  REQUIRE(table.rows.size() == config.r_values.size() * config.vote_counts.size());
  for (const SweepRow& row : table.rows) {
    const double r = param_as_double(row.params, "r");
    const int n = static_cast<int>(param_as_int(row.params, "n"));
    CHECK(row.value == misid_prob(VoteCount(n), ReadoutError(r)));
    // Monotone in N along the curve family at fixed r (r < 1/2 here).
  }
  // Spot-check the steep end of the family.
  const SweepRow& last = table.rows.back();
  CHECK(param_as_double(last.params, "r") == doctest::Approx(0.5));
  CHECK(last.value == doctest::Approx(0.5).epsilon(1e-9));
}
