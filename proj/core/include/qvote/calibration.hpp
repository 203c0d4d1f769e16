// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qvote/regimes.hpp"

namespace qvote::calib {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QubitCalibration {
  int id = 0;
  double readout_error = 0.0;
  double projection_error = 0.0;  // optional in the file, defaults to 0
};

struct CnotCalibration {
  int control_id = 0;
  int target_id = 0;
  double gamma = 0.0;
};

/// Hardware-style error-rate table, schema "calib/1". Parsing is strict:
/// unknown fields, duplicate qubit ids, rates outside [0, 1] and CNOT pairs
/// naming unlisted qubits are all rejected with SchemaError.
struct CalibrationFile {
  std::vector<QubitCalibration> qubits;
  std::vector<CnotCalibration> cnot_pairs;

  static CalibrationFile from_json(const std::string& text);
  std::string to_json() const;

  /// Median gamma over the pairs touching a qubit (either end); 0 when none do.
  double median_gamma_for(int qubit_id) const;
};

/// Register sizing for one qubit: the rate the vote has to beat, the size
/// that reaches (or comes closest to) the target, and which improvement
/// regime the qubit sits in.
struct QubitRecommendation {
  int qubit_id = 0;
  double worst_case_rate = 0.0;  // readout and projection flips combined
  double median_gamma = 0.0;
  int recommended_n = 1;
  double predicted_eps = 0.0;    // recomputed from (recommended_n, rates)
  bool meets_target = false;
  analytics::RegimeLabel regime = analytics::RegimeLabel::no_improvement;
};

struct Recommendation {
  double target_eps = 0.0;
  analytics::FanoutKind fanout = analytics::FanoutKind::log_depth;
  std::vector<QubitRecommendation> qubits;
};

/// Size the register per qubit. The per-vote error couples back to the
/// register size under the log-depth law, so the sizing iterates
/// N -> effective rate -> required N to a fixed point (the map is monotone,
/// so the iteration either converges or runs past the cap). When the target
/// is unreachable the closest achievable size is reported with
/// meets_target = false; regime I qubits fall back to a single vote.
Recommendation recommend(const CalibrationFile& calibration, double eps,
                         analytics::FanoutKind fanout, int n_cap = 10001);

std::string recommendation_to_json(const Recommendation& rec);
std::string recommendation_to_text(const Recommendation& rec);

}  // namespace qvote::calib
