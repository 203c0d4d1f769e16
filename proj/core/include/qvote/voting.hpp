// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <stdexcept>

namespace qvote::analytics {

/// Per-readout flip probability r_{-b,b}: the chance a recorded bit
/// disagrees with the state it was read from.
struct ReadoutError {
  double rate;
  explicit ReadoutError(double r);
};

/// Per-CNOT branch-flip probability gamma.
struct CnotError {
  double rate;
  explicit CnotError(double g);
};

/// Number of voting outcomes N: successive readouts of one qubit, or the
/// target plus its verification register (#V + 1 qubits). Must be odd
/// wherever a majority verdict is taken, so ties cannot occur.
struct VoteCount {
  int value;
  explicit VoteCount(int n);
  bool odd() const { return value % 2 == 1; }
};

/// Effective per-vote error after folding accumulated CNOT noise into the
/// base rate (see effective_error).
struct EffectiveError {
  double rate;
  explicit EffectiveError(double r);
};

/// Thrown by required_n_exact when no odd N up to the cap reaches the target.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Probability that a majority vote over N reads of a fixed bit names the
/// wrong bit, each read flipped independently with probability r. Ties (even
/// N) count as misidentified. Equals both the binomial tail
/// sum_{k<=floor(N/2)} C(N,k) (1-r)^k r^(N-k) and
/// I_r(N - floor(N/2), 1 + floor(N/2)); evaluated through the latter so deep
/// tails keep relative precision.
double misid_prob(VoteCount n, ReadoutError r);

/// Leading-order polynomial approximation C(N, floor(N/2)) r^(N - floor(N/2)).
/// Order-of-magnitude quality only. Requires odd N.
double misid_prob_poly(VoteCount n, ReadoutError r);

/// Stirling-compressed approximation (4r)^((N+1)/2) / sqrt(2 pi (N+1)).
/// Requires odd N.
double misid_prob_stirling(VoteCount n, ReadoutError r);

/// Smallest odd N with misid_prob(N, r) <= eps, scanning odd N upward.
/// Requires 0 < eps < 1 and r < 0.5. Throws CapExceeded when no odd N <= cap
/// suffices.
VoteCount required_n_exact(double eps, ReadoutError r, int cap = 10001);

/// Register size predicted by inverting the Stirling approximation with the
/// Lambert W function:
///
///   N(eps) = -W(-ln(4r) / (2 pi eps^2)) / ln(4r) - 1,
///
/// rounded to the next higher odd integer. Values below 1 clamp to 1, and
/// eps >= r returns 1 outright since a single read already achieves rate r.
/// Requires 0 < eps < 1 and r <= 0.25 (above that the W argument can leave
/// the principal branch).
VoteCount required_n_approx(double eps, ReadoutError r);

/// Effective per-vote error of a log-depth fan-out over a register of
/// N - 1 qubits: r + (1 - 2r) log2(N) gamma, clamped to [0, 1]. N = 1 returns
/// exactly r.
EffectiveError effective_error(ReadoutError r, CnotError gamma, VoteCount n);

/// Same accumulation law for non-integer N >= 1, used when sweeping the
/// misidentification estimate along a continuous register-size axis.
EffectiveError effective_error_continuous(ReadoutError r, CnotError gamma, double n);

/// Floor-free upper bound I_rt(N/2, 1 + N/2) on the misidentification
/// probability, defined for real N >= 1. Dominates misid_prob at every odd
/// integer N.
double misid_prob_est(double n, EffectiveError r_tilde);

}  // namespace qvote::analytics
