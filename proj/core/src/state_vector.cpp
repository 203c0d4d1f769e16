// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qvote::sim {

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count must lie in [1, " +
                                std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Amplitude(0.0, 0.0));
  amps_[0] = Amplitude(1.0, 0.0);
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_) {
    throw std::out_of_range("StateVector: qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_) + " qubits");
  }
}

void StateVector::apply_h(int qubit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | mask];
    amps_[i] = kInvSqrt2 * (a0 + a1);
    amps_[i | mask] = kInvSqrt2 * (a0 - a1);
  }
}

void StateVector::apply_x(int qubit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    std::swap(amps_[i], amps_[i | mask]);
  }
}

void StateVector::apply_z(int qubit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_rz(int qubit, double alpha) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  const Amplitude phase = std::polar(1.0, alpha);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) amps_[i] *= phase;
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw std::out_of_range("StateVector: CNOT control and target must differ");
  }
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
  }
}

void StateVector::apply_cz(int a, int b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) {
    throw std::out_of_range("StateVector: CZ qubits must differ");
  }
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::append_qubits(int count) {
  if (count < 0) {
    throw std::invalid_argument("StateVector: cannot append a negative qubit count");
  }
  if (n_ + count > kMaxQubits) {
    throw std::invalid_argument("StateVector: appending " + std::to_string(count) +
                                " qubits would exceed the " + std::to_string(kMaxQubits) +
                                "-qubit cap");
  }
  n_ += count;
  amps_.resize(std::size_t{1} << n_, Amplitude(0.0, 0.0));
}

double StateVector::prob_one(int qubit) const {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) p += std::norm(amps_[i]);
  }
  return p;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::renormalize() {
  const double n = std::sqrt(norm_sq());
  if (n <= 0.0) {
    throw std::runtime_error("StateVector: cannot renormalize the zero vector");
  }
  const double inv = 1.0 / n;
  for (Amplitude& a : amps_) a *= inv;
}

void StateVector::collapse(int qubit, int bit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t want = bit ? mask : 0;
  double weight = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == want) {
      weight += std::norm(amps_[i]);
    } else {
      amps_[i] = Amplitude(0.0, 0.0);
    }
  }
  if (weight < 1e-300) {
    throw std::runtime_error("StateVector: collapse onto a zero-probability branch");
  }
  const double inv = 1.0 / std::sqrt(weight);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == want) amps_[i] *= inv;
  }
}

std::array<StateVector::Amplitude, 4> StateVector::reduced_density(int qubit) const {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  Amplitude r00(0.0, 0.0), r01(0.0, 0.0), r11(0.0, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | mask];
    r00 += a0 * std::conj(a0);
    r11 += a1 * std::conj(a1);
    r01 += a0 * std::conj(a1);
  }
  return {r00, r01, std::conj(r01), r11};
}

}  // namespace qvote::sim
