// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <optional>
#include <stdexcept>

#include "qvote/voting.hpp"

namespace qvote::analytics {

/// How the misidentification probability responds to growing the
/// verification register at fixed (r, gamma):
///   III - already better at N = 3,
///   II  - worse at N = 3 but some larger N improves,
///   I   - no register size improves on N = 1.
/// Mutually exclusive and exhaustive for any r < 0.5.
enum class RegimeLabel {
  immediate_improvement,               // III
  initial_worsening_then_improvement,  // II
  no_improvement,                      // I
};

/// Roman-numeral form used in reports and tables ("III", "II", "I").
const char* to_string(RegimeLabel label);

/// Numeric form used as a table value (3, 2, 1).
int regime_code(RegimeLabel label);

/// How verification qubits are entangled with the target: one CNOT from the
/// target per qubit (linear, depth 1 everywhere) or a doubling cascade
/// (log_depth, noise accumulates with depth).
enum class FanoutKind { linear, log_depth };

/// Thrown by the critical-gamma searches when no sign change exists in
/// gamma within (0, 0.5).
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Misidentification probability of an N-vote register whose per-vote error
/// is the log-depth effective rate: misid_prob(N, effective_error(r, gamma, N)).
double misid_with_cnot(ReadoutError r, CnotError gamma, VoteCount n);

/// Critical gamma* below which the smallest register already helps:
/// solves eps_{N=3}(r, gamma) = eps_{N=1}(r) = r by sign-change bracketing
/// plus bisection to 1e-10. Requires 0 < r < 0.5.
CnotError critical_gamma_initial(ReadoutError r);

/// Critical gamma** above which no odd N in (1, n_max] improves on a single
/// vote; bisection on the predicate "some register size helps".
/// Requires 0 < r < 0.5.
CnotError critical_gamma_any(ReadoutError r, VoteCount n_max = VoteCount(1001));

/// Odd N in [1, n_max] minimizing the misidentification probability under
/// the log-depth accumulation law; ties break toward the smaller register.
VoteCount best_n(ReadoutError r, CnotError gamma, VoteCount n_max = VoteCount(101));

/// Smallest odd N in (1, n_max] that beats a single vote, or nullopt when no
/// register size does.
std::optional<VoteCount> first_improving_n(ReadoutError r, CnotError gamma,
                                           VoteCount n_max = VoteCount(101));

/// Classify (r, gamma) into the three regimes by direct evaluation, under
/// either fan-out's accumulation law. Requires 0 < r < 0.5.
RegimeLabel classify_regime(ReadoutError r, CnotError gamma,
                            VoteCount n_max = VoteCount(1001),
                            FanoutKind fanout = FanoutKind::log_depth);

}  // namespace qvote::analytics
