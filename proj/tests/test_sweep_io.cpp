// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/sweep_io.hpp"

#include <doctest.h>

using namespace qvote::mc;

namespace {

SweepTable sample_table() {
  ExperimentConfig config;
  config.kind = ExperimentKind::projection_mitigation;
  config.p_values = {0.01, 0.03};
  config.register_sizes = {2};
  config.runs = 10;
  config.repetitions = 20;
  config.master_seed = 99;
  return run_experiment(config, 2);
}

}  // namespace

TEST_CASE("JSON round trip reproduces the table exactly") {
  const SweepTable table = sample_table();
  const std::string text = to_json(table);
  const SweepTable parsed = table_from_json(text);
  CHECK(parsed == table);
  CHECK(to_json(parsed) == text);
}

TEST_CASE("CSV shape: sorted parameter columns then value, sem, samples") {
  const SweepTable table = sample_table();
  const std::string csv = to_csv(table);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header == "alpha,gamma,p,r,register_size,topology,value,sem,samples");
  // one header plus one line per row
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == static_cast<long>(table.rows.size()) + 1);
}

TEST_CASE("doubles survive the 17-digit CSV format") {
  SweepTable table = sample_table();
  table.rows[0].value = 0.1 + 0.2;  // classic non-representable sum
  const std::string csv = to_csv(table);
  CHECK(csv.find("0.30000000000000004") != std::string::npos);
}

TEST_CASE("config round trip and hashing") {
  ExperimentConfig config;
  config.kind = ExperimentKind::owqc_end_to_end;
  config.p_values = {0.05};
  config.r_values = {0.02};
  config.gamma_values = {0.005};
  config.register_sizes = {0, 2};
  config.alphas = {0.25, 1.5};
  config.runs = 64;
  config.repetitions = 32;
  config.master_seed = 4242;
  config.metric = OwqcMetric::wrong_output;
  config.mode = qvote::owqc::MeasureMode::computational;

  const std::string text = config_to_json(config);
  const ExperimentConfig parsed = config_from_json(text);
  CHECK(config_to_json(parsed) == text);
  CHECK(config_hash_hex(parsed) == config_hash_hex(config));

  ExperimentConfig tweaked = parsed;
  tweaked.master_seed += 1;
  CHECK(config_hash_hex(tweaked) != config_hash_hex(config));
}

TEST_CASE("strict parsing rejects unknown and malformed fields") {
  CHECK_THROWS_AS(config_from_json("{"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"schema": "experiment/2", "kind": "bernoulli_toy"})"),
                  ConfigError);
  CHECK_THROWS_AS(
      config_from_json(R"({"schema": "experiment/1", "kind": "bernoulli_toy", "shots": 5})"),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(
          R"({"schema": "experiment/1", "kind": "bernoulli_toy", "grid": {"qq": [0.5]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(R"({"schema": "experiment/1", "kind": "no_such_kind"})"),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(
          R"({"schema": "experiment/1", "kind": "owqc_end_to_end", "metric": "fidelity"})"),
      ConfigError);
  // Minimal valid config parses.
  const ExperimentConfig config =
      config_from_json(R"({"schema": "experiment/1", "kind": "bernoulli_toy"})");
  CHECK(config.kind == ExperimentKind::bernoulli_toy);
}

TEST_CASE("sweep table parser is as strict as the config parser") {
  const SweepTable table = sample_table();
  std::string text = to_json(table);
  CHECK_THROWS_AS(table_from_json("{}"), ConfigError);
  const auto pos = text.find("\"value\"");
  REQUIRE(pos != std::string::npos);
  std::string broken = text;
  broken.replace(pos, 7, "\"val__\"");
  CHECK_THROWS_AS(table_from_json(broken), ConfigError);
}

TEST_CASE("kind and predictor names round trip") {
  for (auto kind : {ExperimentKind::readout_voting, ExperimentKind::projection_mitigation,
                    ExperimentKind::owqc_end_to_end, ExperimentKind::analytic_sweep,
                    ExperimentKind::bernoulli_toy}) {
    CHECK(kind_from_string(to_string(kind)) == kind);
  }
  for (auto predictor :
       {Predictor::voting, Predictor::voting_effective, Predictor::voting_upper_bound}) {
    CHECK(predictor_from_string(to_string(predictor)) == predictor);
  }
  CHECK_THROWS_AS(kind_from_string("bogus"), ConfigError);
  CHECK_THROWS_AS(predictor_from_string("bogus"), ConfigError);
}

TEST_CASE("prediction report serialization") {
  const SweepTable table = sample_table();
  const PredictionReport report = compare_to_prediction(table, Predictor::voting);
  const std::string json_text = report_to_json(report);
  CHECK(json_text.find("prediction-report/1") != std::string::npos);
  const std::string text = report_to_text(report);
  CHECK(text.find("predictor: voting") != std::string::npos);
}
