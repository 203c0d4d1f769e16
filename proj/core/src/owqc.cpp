// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/owqc.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qvote::owqc {

namespace {

constexpr int kTarget = 0;
constexpr int kContinuation = 1;
constexpr int kRegisterBase = 2;

// H Rz(alpha): maps the rotated measurement basis onto {|0>, |1>}.
void rotate_to_computational(sim::StateVector& state, int qubit, double alpha) {
  state.apply_rz(qubit, alpha);
  state.apply_h(qubit);
}

// Rz(-alpha) H: inverse of the above.
void rotate_to_measurement_basis(sim::StateVector& state, int qubit, double alpha) {
  state.apply_h(qubit);
  state.apply_rz(qubit, -alpha);
}

// One fan-out CNOT. A faulty gate leaves its freshly populated qubit in the
// wrong branch with probability gamma; in the computational frame the
// fan-out runs in, that branch flip is an X on the target, which commutes
// through the later basis rotation as the equivalent phase flip
// ((Rz(-a)H) X = Z (Rz(-a)H)). An X here (rather than a Z) also propagates
// down the cascade: anything copied from a wrong qubit is wrong too.
void fanout_cnot(sim::StateVector& state, int control, int target, double gamma, RngStream& rng) {
  state.apply_cnot(control, target);
  if (rng.bernoulli(gamma)) {
    state.apply_x(target);
  }
}

void run_fanout(sim::StateVector& state, const VerificationTopology& topology, double gamma,
                RngStream& rng) {
  const int nv = topology.register_size;
  if (topology.kind == VerificationTopology::Kind::linear) {
    for (int j = 0; j < nv; ++j) {
      fanout_cnot(state, kTarget, kRegisterBase + j, gamma, rng);
    }
    return;
  }
  // Doubling cascade: each step the target plus every populated register
  // qubit copies into a fresh one; a short final step just truncates the
  // control list left to right.
  int populated = 0;
  while (populated < nv) {
    const int sources = populated + 1;
    for (int j = 0; j < sources && populated < nv; ++j) {
      const int control = (j == 0) ? kTarget : kRegisterBase + (j - 1);
      fanout_cnot(state, control, kRegisterBase + populated, gamma, rng);
      ++populated;
    }
  }
}

}  // namespace

const QubitNoise& ErrorModel::for_qubit(int qubit) const {
  if (!per_qubit.empty()) {
    if (qubit < 0 || static_cast<std::size_t>(qubit) >= per_qubit.size()) {
      throw std::out_of_range("ErrorModel: no per-qubit rates for qubit " + std::to_string(qubit));
    }
    return per_qubit[static_cast<std::size_t>(qubit)];
  }
  return base;
}

GraphStateTC prepare_graph_state(double alpha) {
  sim::StateVector state(2);
  state.apply_h(kTarget);
  state.apply_h(kContinuation);
  state.apply_cz(kTarget, kContinuation);
  return GraphStateTC{std::move(state), alpha};
}

sim::StateVector attach_verification(const GraphStateTC& graph, const VerificationTopology& topology,
                                     double gamma, RngStream& rng, MeasureMode mode) {
  if (topology.register_size < 0) {
    throw std::invalid_argument("attach_verification: register size must be >= 0");
  }
  sim::StateVector state = graph.state;
  state.append_qubits(topology.register_size);

  rotate_to_computational(state, kTarget, graph.alpha);
  run_fanout(state, topology, gamma, rng);
  if (mode == MeasureMode::rotated) {
    rotate_to_measurement_basis(state, kTarget, graph.alpha);
    for (int j = 0; j < topology.register_size; ++j) {
      rotate_to_measurement_basis(state, kRegisterBase + j, graph.alpha);
    }
  }
  return state;
}

VoteOutcome mitigated_measure(sim::StateVector& state, int target,
                              const std::vector<int>& verification, double alpha,
                              const ErrorModel& errors, RngStream& rng, MeasureMode mode) {
  const int n_votes = 1 + static_cast<int>(verification.size());
  if (n_votes % 2 == 0) {
    throw std::invalid_argument("mitigated_measure: even vote count " + std::to_string(n_votes) +
                                " could tie; #V must be even");
  }

  VoteResult result;
  result.bits.reserve(static_cast<std::size_t>(n_votes));

  const auto measure_one = [&](int qubit) {
    if (mode == MeasureMode::rotated) {
      rotate_to_computational(state, qubit, alpha);
    }
    const QubitNoise& noise = errors.for_qubit(qubit);
    return sim::measure_with_errors(state, qubit, noise.projection, noise.readout, rng);
  };

  const sim::MeasurementRecord target_record = measure_one(target);
  result.bits.push_back(target_record.recorded_bit);
  for (int qubit : verification) {
    result.bits.push_back(measure_one(qubit).recorded_bit);
  }

  int ones = 0;
  for (int bit : result.bits) ones += bit;
  result.verdict = (ones > n_votes - ones) ? 1 : 0;
  result.margin = std::abs(n_votes - 2 * ones);
  return VoteOutcome{std::move(result), target_record.true_branch};
}

void apply_correction(sim::StateVector& state, int continuation, int verdict) {
  if (verdict != 0 && verdict != 1) {
    throw std::invalid_argument("apply_correction: verdict must be 0 or 1");
  }
  if (verdict == 1) state.apply_x(continuation);
}

ShotResult run_owqc_shot(double alpha, const ErrorModel& errors,
                         const VerificationTopology& topology, RngStream& rng, MeasureMode mode) {
  GraphStateTC graph = prepare_graph_state(alpha);
  sim::StateVector state = attach_verification(graph, topology, errors.cnot_gamma, rng, mode);

  std::vector<int> register_qubits;
  register_qubits.reserve(static_cast<std::size_t>(topology.register_size));
  for (int j = 0; j < topology.register_size; ++j) {
    register_qubits.push_back(kRegisterBase + j);
  }

  const VoteOutcome outcome =
      mitigated_measure(state, kTarget, register_qubits, alpha, errors, rng, mode);
  apply_correction(state, kContinuation, outcome.vote.verdict);

  // Fidelity of the continuation against H Rz(alpha) |+> before the
  // verification rotation touches it.
  const std::complex<double> phase = std::polar(1.0, alpha);
  const std::complex<double> t0 = 0.5 * (1.0 + phase);
  const std::complex<double> t1 = 0.5 * (1.0 - phase);
  const auto rho = state.reduced_density(kContinuation);
  const double fidelity = std::real(std::conj(t0) * rho[0] * t0 + std::conj(t0) * rho[1] * t1 +
                                    std::conj(t1) * rho[2] * t0 + std::conj(t1) * rho[3] * t1);

  // Verify: rotate the continuation to the computational basis and read it
  // out through the same noise channel; an error-free pipeline yields 0.
  state.apply_h(kContinuation);
  state.apply_rz(kContinuation, -alpha);
  state.apply_h(kContinuation);
  const QubitNoise& c_noise = errors.for_qubit(kContinuation);
  const sim::MeasurementRecord output =
      sim::measure_with_errors(state, kContinuation, c_noise.projection, c_noise.readout, rng);

  // The register comes back to |0...0| for the next step.
  for (int qubit : register_qubits) {
    sim::reset_qubit(state, qubit);
  }

  return ShotResult{output.recorded_bit, fidelity, fidelity < 0.5, outcome.vote.verdict,
                    outcome.true_branch};
}

}  // namespace qvote::owqc
