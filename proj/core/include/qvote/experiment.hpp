// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qvote/calibration.hpp"
#include "qvote/owqc.hpp"

namespace qvote::mc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a configuration would need more than the simulator's 20
/// qubits.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  readout_voting,        // classical repeated readout of a fixed bit
  projection_mitigation, // graph state + register, wrong-verdict rate
  owqc_end_to_end,       // full shot pipeline
  analytic_sweep,        // no sampling: misidentification curves
  bernoulli_toy,         // harness calibration channel
};

/// Which per-shot indicator the owqc_end_to_end kind averages.
enum class OwqcMetric { misidentification, wrong_output };

/// Parameter grid plus sampling plan. Every (grid point, repetition) pair
/// draws from its own RngStream derived from (master_seed, grid index *
/// repetitions + repetition index), which makes results independent of
/// worker count and scheduling.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::analytic_sweep;

  std::vector<double> p_values{0.0};      // projection flip rates
  std::vector<double> r_values{0.0};      // readout flip rates
  std::vector<double> gamma_values{0.0};  // per-CNOT branch-flip rates
  std::vector<int> register_sizes{0};     // #V, even so the vote count is odd
  std::vector<int> vote_counts{1};        // N for readout_voting / analytic_sweep
  std::vector<owqc::VerificationTopology::Kind> topologies{
      owqc::VerificationTopology::Kind::linear};
  std::vector<double> alphas{0.0};
  std::vector<double> q_values{0.5};  // bernoulli_toy only

  int runs = 100;           // shots per repetition
  int repetitions = 1000;   // independently seeded batches per grid point
  std::uint64_t master_seed = 0;
  OwqcMetric metric = OwqcMetric::misidentification;
  owqc::MeasureMode mode = owqc::MeasureMode::rotated;

  /// Optional hardware-style rate table; when present it supplies per-qubit
  /// projection/readout rates and the (median) CNOT gamma for the simulated
  /// kinds, and the p/r/gamma grids above are ignored.
  std::optional<calib::CalibrationFile> calibration;

  void validate() const;  // throws ConfigError / ResourceLimitError
};

/// Row parameters are an ordered name -> value map so analytic tables,
/// Monte Carlo tables and CLI-generated tables all share one serialized
/// shape. Keys are emitted in map (alphabetical) order everywhere.
using ParamValue = std::variant<std::int64_t, double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

bool has_param(const ParamMap& params, const std::string& key);
double param_as_double(const ParamMap& params, const std::string& key);  // ints promote
std::int64_t param_as_int(const ParamMap& params, const std::string& key);
const std::string& param_as_string(const ParamMap& params, const std::string& key);

struct SweepRow {
  ParamMap params;
  double value = 0.0;
  double sem = 0.0;            // standard error of the per-repetition means
  std::uint64_t samples = 0;   // runs * repetitions (0 for analytic rows)

  bool operator==(const SweepRow&) const = default;
};

struct SweepMetadata {
  std::string kind;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::string code_version;
  std::string rng_algorithm;
  int runs = 0;
  int repetitions = 0;

  bool operator==(const SweepMetadata&) const = default;
};

struct SweepTable {
  SweepMetadata metadata;
  std::vector<SweepRow> rows;

  bool operator==(const SweepTable&) const = default;
};

/// Run the configured sweep. Sampling kinds average `runs` shots per
/// repetition and report the mean of repetition means; the value is
/// bit-identical for any n_threads.
SweepTable run_experiment(const ExperimentConfig& config, int n_threads = 1);

/// Closed-form predictions a table can be scored against: the plain voting
/// misidentification probability, the same with the fan-out's effective
/// per-vote error folded in, and the floor-free upper-bound estimate.
enum class Predictor { voting, voting_effective, voting_upper_bound };

const char* to_string(Predictor predictor);
Predictor predictor_from_string(const std::string& name);

struct PredictionRow {
  std::size_t row_index = 0;
  double observed = 0.0;
  double predicted = 0.0;
  double sem_used = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct PredictionReport {
  Predictor predictor = Predictor::voting;
  std::vector<PredictionRow> rows;
  std::size_t pass_count = 0;
  double pass_fraction = 0.0;
};

/// Score every row at |z| <= 3, where z divides by the repetition-level SEM
/// floored at the binomial SEM implied by the prediction (rare-event rows
/// can otherwise report an empirical SEM of exactly zero).
PredictionReport compare_to_prediction(const SweepTable& table, Predictor predictor);

}  // namespace qvote::mc
