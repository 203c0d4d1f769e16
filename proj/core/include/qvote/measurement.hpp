// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

#include "qvote/rng.hpp"
#include "qvote/state_vector.hpp"

namespace qvote::sim {

/// Bit-flip probabilities that may depend on the starting value: from_zero
/// is P(comes out 1 | truly 0), from_one is P(comes out 0 | truly 1). Used
/// for both projection errors (the post-measurement state lands in the
/// wrong basis state) and readout errors (the classical record disagrees
/// with the post-measurement state).
struct FlipRates {
  double from_zero = 0.0;
  double from_one = 0.0;

  FlipRates() = default;
  FlipRates(double zero_to_one, double one_to_zero);
  static FlipRates symmetric(double p) { return FlipRates(p, p); }

  double rate_from(int bit) const { return bit ? from_one : from_zero; }
};

/// Ground truth and the two error stages of one measured qubit.
struct MeasurementRecord {
  int true_branch;    // Born-rule branch the register collapsed to
  int projected_bit;  // post-measurement state of the measured qubit
  int recorded_bit;   // what the readout apparatus reported
};

/// Computational-basis measurement with separate projection and readout
/// error stages:
///   1. sample the branch b from the Born rule on the full entangled state
///      and collapse every qubit to that branch;
///   2. with probability projection.rate_from(b), flip the measured qubit's
///      own post-measurement state to |1-b> (entangled partners stay in
///      branch b, which keeps the register's votes independent);
///   3. with probability readout.rate_from(projected), record the opposite
///      of the projected bit.
MeasurementRecord measure_with_errors(StateVector& state, int qubit, const FlipRates& projection,
                                      const FlipRates& readout, RngStream& rng);

/// N independent readouts of an already-projected qubit; each read flips
/// with probability flip_rate, so the correct-read count is
/// Binomial(n_reads, 1 - flip_rate).
std::vector<int> readout_only(int basis_bit, double flip_rate, int n_reads, RngStream& rng);

/// Return a measured (disentangled, computational-basis) qubit to |0> so it
/// can be reused. Throws std::logic_error when the qubit still carries
/// superposition or entanglement (branch weight farther than 1e-10 from
/// 0 or 1).
void reset_qubit(StateVector& state, int qubit);

/// Ideal CNOT followed by a Z on the target with probability gamma. On
/// |+>|0> / |->|0> inputs this produces the intended Bell state with
/// probability 1 - gamma and its phase-flipped partner otherwise, i.e. the
/// populated qubit comes out in the wrong branch of the paired basis with
/// probability gamma.
void apply_noisy_cnot(StateVector& state, int control, int target, double gamma, RngStream& rng);

}  // namespace qvote::sim
