// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

#include "qvote/measurement.hpp"
#include "qvote/rng.hpp"
#include "qvote/state_vector.hpp"

namespace qvote::owqc {

/// Fan-out pattern populating the verification register from the target:
/// linear CNOTs every register qubit directly from the target (depth 1 per
/// qubit); log_depth doubles the populated set each step, so CNOT noise
/// accumulates to depth ~log2(#V).
struct VerificationTopology {
  enum class Kind { linear, log_depth };
  Kind kind = Kind::linear;
  int register_size = 0;  // #V >= 0
};

/// Whether target and register are measured in the rotated |+a>/|-a> basis
/// (the state is returned to that basis after the fan-out) or directly in
/// the computational basis (the basis change is folded into the
/// measurement). Both yield identical vote statistics.
enum class MeasureMode { rotated, computational };

/// Two-qubit resource state for one measurement step: target T on qubit 0,
/// continuation C on qubit 1, plus the rotation angle the step implements.
struct GraphStateTC {
  sim::StateVector state;
  double alpha;
};

/// Majority vote over the N = #V + 1 recorded bits.
struct VoteResult {
  std::vector<int> bits;  // target's record first, then the register's
  int verdict;            // 0 iff strictly more zeros than ones
  int margin;             // |#zeros - #ones|, >= 1 for odd N
};

/// Vote plus the simulation-only ground truth it tried to identify.
struct VoteOutcome {
  VoteResult vote;
  int true_branch;
};

/// Per-qubit measurement noise.
struct QubitNoise {
  sim::FlipRates projection;
  sim::FlipRates readout;
};

/// Noise model for a shot: a base rate pair for every measured qubit,
/// optional per-qubit overrides (indexed by simulator qubit), and the
/// per-CNOT branch-flip probability.
struct ErrorModel {
  QubitNoise base;
  std::vector<QubitNoise> per_qubit;  // empty, or one entry per qubit
  double cnot_gamma = 0.0;

  const QubitNoise& for_qubit(int qubit) const;
};

/// Result of one full measure-vote-correct-verify shot.
struct ShotResult {
  int output_bit;             // 0 when everything went right
  double fidelity_to_target;  // continuation vs its intended state, pre-verification
  bool misidentified;         // fidelity below 1/2
  int verdict;
  int true_branch;
};

/// The entangled target/continuation pair with rotation angle alpha,
/// constructed as CZ (H x H) |00>. Projecting the target onto the rotated
/// basis leaves the continuation in (the possibly X-flipped) H Rz(alpha) |+>.
GraphStateTC prepare_graph_state(double alpha);

/// Entangle a fresh |0...0> register with the target.
///
/// rotated mode: rotate T to the computational basis (H Rz(alpha)), run the
/// CNOT fan-out, rotate T and the register into the measurement basis
/// (Rz(-alpha) H each). computational mode stops after the fan-out; the
/// basis change then belongs to the measurement.
///
/// Register qubits occupy indices 2 .. #V+1 of the returned state.
sim::StateVector attach_verification(const GraphStateTC& graph, const VerificationTopology& topology,
                                     double gamma, RngStream& rng, MeasureMode mode);

/// Measure the target and every register qubit (rotated mode prepends the
/// H Rz(alpha) basis change per qubit), each through the projection/readout
/// error channel, and take the majority. N = #V + 1 must be odd.
VoteOutcome mitigated_measure(sim::StateVector& state, int target,
                              const std::vector<int>& verification, double alpha,
                              const ErrorModel& errors, RngStream& rng, MeasureMode mode);

/// Feedforward X on the continuation iff the verdict names the flipped
/// branch.
void apply_correction(sim::StateVector& state, int continuation, int verdict);

/// Full pipeline: prepare, attach, vote, correct, then verify by rotating
/// the continuation back to the computational basis (H Rz(-alpha) H after
/// the correction) and measuring it through the same error channel. The
/// register is reset to |0...0> afterwards, as it would be when reused for
/// the next step.
ShotResult run_owqc_shot(double alpha, const ErrorModel& errors,
                         const VerificationTopology& topology, RngStream& rng,
                         MeasureMode mode = MeasureMode::rotated);

}  // namespace qvote::owqc
