// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qvote::sim {

/// Dense state vector over up to 20 qubits. Qubit q is bit q of the
/// amplitude index (qubit 0 least significant). Gates preserve the norm to
/// machine precision; collapse renormalizes.
class StateVector {
 public:
  using Amplitude = std::complex<double>;
  static constexpr int kMaxQubits = 20;

  /// |0...0> on n_qubits qubits.
  explicit StateVector(int n_qubits);

  int num_qubits() const { return n_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude& amp(std::size_t index) { return amps_[index]; }
  const Amplitude& amp(std::size_t index) const { return amps_[index]; }

  void apply_h(int qubit);
  void apply_x(int qubit);
  void apply_z(int qubit);
  /// Rz(alpha) = diag(1, e^{i alpha}): the |1> amplitude picks up the phase.
  void apply_rz(int qubit, double alpha);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);

  /// Tensor |0...0> on count fresh qubits above the current ones.
  void append_qubits(int count);

  double prob_one(int qubit) const;
  double norm_sq() const;
  void renormalize();

  /// Project qubit onto the given bit and renormalize. Throws
  /// std::runtime_error if the branch carries (numerically) zero weight.
  void collapse(int qubit, int bit);

  /// Reduced 2x2 density matrix of one qubit, row-major {rho00, rho01,
  /// rho10, rho11}.
  std::array<Amplitude, 4> reduced_density(int qubit) const;

 private:
  int n_;
  std::vector<Amplitude> amps_;

  void check_qubit(int qubit) const;
};

}  // namespace qvote::sim
