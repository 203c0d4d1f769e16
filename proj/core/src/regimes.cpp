// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/regimes.hpp"

#include <cmath>
#include <string>

namespace qvote::analytics {

namespace {

constexpr double kGammaLo = 1e-9;
constexpr double kGammaHi = 0.5 - 1e-9;
constexpr int kCoarsePoints = 64;
constexpr double kBisectTol = 1e-10;

void require_open_half(ReadoutError r, const char* who) {
  if (!(r.rate > 0.0 && r.rate < 0.5)) {
    throw std::domain_error(std::string(who) + ": requires 0 < r < 0.5, got " +
                            std::to_string(r.rate));
  }
}

double fanout_rate(FanoutKind fanout, ReadoutError r, CnotError gamma, int n) {
  if (n == 1) return r.rate;
  if (fanout == FanoutKind::linear) {
    return r.rate + gamma.rate - 2.0 * r.rate * gamma.rate;
  }
  return effective_error(r, gamma, VoteCount(n)).rate;
}

double eps_at(FanoutKind fanout, ReadoutError r, CnotError gamma, int n) {
  if (n == 1) return r.rate;
  return misid_prob(VoteCount(n), ReadoutError(fanout_rate(fanout, r, gamma, n)));
}

bool any_improvement(FanoutKind fanout, ReadoutError r, CnotError gamma, int n_max) {
  for (int n = 3; n <= n_max; n += 2) {
    if (eps_at(fanout, r, gamma, n) < r.rate) return true;
  }
  return false;
}

// Bisect the boundary of a predicate that is true at the low end of
// [kGammaLo, kGammaHi] and false at the high end, scanning coarsely first.
template <typename Pred>
double bisect_boundary(Pred pred, const char* who) {
  double lo = kGammaLo;
  double hi = kGammaHi;
  if (!pred(lo) || pred(hi)) {
    throw NoRootError(std::string(who) + ": no sign change in gamma within (0, 0.5)");
  }
  // Coarse scan narrows the bracket past any flat stretches.
  double prev = lo;
  for (int i = 1; i <= kCoarsePoints; ++i) {
    const double g = kGammaLo + (kGammaHi - kGammaLo) * i / kCoarsePoints;
    if (!pred(g)) {
      lo = prev;
      hi = g;
      break;
    }
    prev = g;
  }
  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::immediate_improvement:
      return "III";
    case RegimeLabel::initial_worsening_then_improvement:
      return "II";
    case RegimeLabel::no_improvement:
      return "I";
  }
  return "?";
}

int regime_code(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::immediate_improvement:
      return 3;
    case RegimeLabel::initial_worsening_then_improvement:
      return 2;
    case RegimeLabel::no_improvement:
      return 1;
  }
  return 0;
}

double misid_with_cnot(ReadoutError r, CnotError gamma, VoteCount n) {
  return misid_prob(n, ReadoutError(effective_error(r, gamma, n).rate));
}

CnotError critical_gamma_initial(ReadoutError r) {
  require_open_half(r, "critical_gamma_initial");
  const double g = bisect_boundary(
      [&](double gamma) {
        return eps_at(FanoutKind::log_depth, r, CnotError(gamma), 3) < r.rate;
      },
      "critical_gamma_initial");
  return CnotError(g);
}

CnotError critical_gamma_any(ReadoutError r, VoteCount n_max) {
  require_open_half(r, "critical_gamma_any");
  const double g = bisect_boundary(
      [&](double gamma) {
        return any_improvement(FanoutKind::log_depth, r, CnotError(gamma), n_max.value);
      },
      "critical_gamma_any");
  return CnotError(g);
}

VoteCount best_n(ReadoutError r, CnotError gamma, VoteCount n_max) {
  require_open_half(r, "best_n");
  if (!n_max.odd()) {
    throw std::domain_error("best_n: n_max must be odd");
  }
  int best = 1;
  double best_eps = r.rate;
  for (int n = 3; n <= n_max.value; n += 2) {
    const double eps = eps_at(FanoutKind::log_depth, r, gamma, n);
    if (eps < best_eps) {
      best_eps = eps;
      best = n;
    }
  }
  return VoteCount(best);
}

std::optional<VoteCount> first_improving_n(ReadoutError r, CnotError gamma, VoteCount n_max) {
  require_open_half(r, "first_improving_n");
  for (int n = 3; n <= n_max.value; n += 2) {
    if (eps_at(FanoutKind::log_depth, r, gamma, n) < r.rate) return VoteCount(n);
  }
  return std::nullopt;
}

RegimeLabel classify_regime(ReadoutError r, CnotError gamma, VoteCount n_max, FanoutKind fanout) {
  require_open_half(r, "classify_regime");
  if (eps_at(fanout, r, gamma, 3) < r.rate) {
    return RegimeLabel::immediate_improvement;
  }
  if (any_improvement(fanout, r, gamma, n_max.value)) {
    return RegimeLabel::initial_worsening_then_improvement;
  }
  return RegimeLabel::no_improvement;
}

}  // namespace qvote::analytics
