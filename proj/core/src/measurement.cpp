// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/measurement.hpp"

#include <stdexcept>
#include <string>

namespace qvote::sim {

namespace {

void require_rate(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

FlipRates::FlipRates(double zero_to_one, double one_to_zero)
    : from_zero(zero_to_one), from_one(one_to_zero) {
  require_rate(zero_to_one, "FlipRates.from_zero");
  require_rate(one_to_zero, "FlipRates.from_one");
}

MeasurementRecord measure_with_errors(StateVector& state, int qubit, const FlipRates& projection,
                                      const FlipRates& readout, RngStream& rng) {
  const double p1 = state.prob_one(qubit);
  const int branch = rng.bernoulli(p1) ? 1 : 0;
  state.collapse(qubit, branch);

  int projected = branch;
  if (rng.bernoulli(projection.rate_from(branch))) {
    state.apply_x(qubit);
    projected = 1 - branch;
  }

  int recorded = projected;
  if (rng.bernoulli(readout.rate_from(projected))) {
    recorded = 1 - projected;
  }
  return MeasurementRecord{branch, projected, recorded};
}

std::vector<int> readout_only(int basis_bit, double flip_rate, int n_reads, RngStream& rng) {
  require_rate(flip_rate, "readout_only: flip rate");
  if (basis_bit != 0 && basis_bit != 1) {
    throw std::domain_error("readout_only: basis bit must be 0 or 1");
  }
  if (n_reads < 1) {
    throw std::domain_error("readout_only: need at least one read");
  }
  std::vector<int> reads(static_cast<std::size_t>(n_reads));
  for (int& bit : reads) {
    bit = rng.bernoulli(flip_rate) ? 1 - basis_bit : basis_bit;
  }
  return reads;
}

void reset_qubit(StateVector& state, int qubit) {
  const double p1 = state.prob_one(qubit);
  constexpr double kTol = 1e-10;
  if (p1 > kTol && p1 < 1.0 - kTol) {
    throw std::logic_error("reset_qubit: qubit " + std::to_string(qubit) +
                           " is not in a definite computational basis state (P(1) = " +
                           std::to_string(p1) + ")");
  }
  const int bit = p1 >= 0.5 ? 1 : 0;
  state.collapse(qubit, bit);  // scrubs any residual weight within tolerance
  if (bit == 1) state.apply_x(qubit);
}

void apply_noisy_cnot(StateVector& state, int control, int target, double gamma, RngStream& rng) {
  require_rate(gamma, "apply_noisy_cnot: gamma");
  state.apply_cnot(control, target);
  if (rng.bernoulli(gamma)) {
    state.apply_z(target);
  }
}

}  // namespace qvote::sim
