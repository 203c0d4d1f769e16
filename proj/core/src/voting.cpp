// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/voting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qvote/special_functions.hpp"

namespace qvote::analytics {

namespace {

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

void require_odd(VoteCount n, const char* who) {
  if (!n.odd()) {
    throw std::domain_error(std::string(who) + ": vote count must be odd, got " +
                            std::to_string(n.value));
  }
}

}  // namespace

ReadoutError::ReadoutError(double r) : rate(r) { require_probability(r, "ReadoutError"); }

CnotError::CnotError(double g) : rate(g) { require_probability(g, "CnotError"); }

VoteCount::VoteCount(int n) : value(n) {
  if (n < 1) {
    throw std::domain_error("VoteCount must be at least 1, got " + std::to_string(n));
  }
}

EffectiveError::EffectiveError(double r) : rate(r) { require_probability(r, "EffectiveError"); }

double misid_prob(VoteCount n, ReadoutError r) {
  const int half = n.value / 2;
  return reg_inc_beta(r.rate, static_cast<double>(n.value - half), static_cast<double>(1 + half));
}

double misid_prob_poly(VoteCount n, ReadoutError r) {
  require_odd(n, "misid_prob_poly");
  const int half = n.value / 2;
  if (r.rate == 0.0) return 0.0;
  const long double log_term = log_binomial(n.value, half) +
                               static_cast<long double>(n.value - half) * std::log(static_cast<long double>(r.rate));
  return static_cast<double>(std::exp(log_term));
}

double misid_prob_stirling(VoteCount n, ReadoutError r) {
  require_odd(n, "misid_prob_stirling");
  if (r.rate == 0.0) return 0.0;
  const long double np1 = n.value + 1.0L;
  const long double log_num = (np1 / 2.0L) * std::log(4.0L * static_cast<long double>(r.rate));
  const long double log_den = 0.5L * std::log(2.0L * std::numbers::pi_v<long double> * np1);
  return static_cast<double>(std::exp(log_num - log_den));
}

VoteCount required_n_exact(double eps, ReadoutError r, int cap) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("required_n_exact: eps must lie in (0, 1)");
  }
  if (!(r.rate < 0.5)) {
    throw std::domain_error("required_n_exact: needs r < 0.5, a vote must beat a coin flip");
  }
  if (cap < 1) {
    throw std::domain_error("required_n_exact: cap must be positive");
  }
  for (int n = 1; n <= cap; n += 2) {
    if (misid_prob(VoteCount(n), r) <= eps) return VoteCount(n);
  }
  throw CapExceeded("required_n_exact: no odd N <= " + std::to_string(cap) +
                    " reaches eps = " + std::to_string(eps) + " at r = " + std::to_string(r.rate));
}

VoteCount required_n_approx(double eps, ReadoutError r) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("required_n_approx: eps must lie in (0, 1)");
  }
  if (r.rate > 0.25) {
    throw std::domain_error("required_n_approx: needs r <= 0.25, got " + std::to_string(r.rate));
  }
  // A single read already misidentifies with probability exactly r.
  if (eps >= r.rate) return VoteCount(1);

  const double log_ratio = std::log(4.0 * r.rate);
  double continuous;
  if (log_ratio == 0.0) {
    // r == 0.25 exactly: the Stirling form degenerates to eps = 1/sqrt(2 pi (N+1)).
    continuous = 1.0 / (2.0 * std::numbers::pi * eps * eps) - 1.0;
  } else {
    const double w_arg = -log_ratio / (2.0 * std::numbers::pi * eps * eps);
    continuous = -lambert_w0(w_arg) / log_ratio - 1.0;
  }
  if (continuous <= 1.0) return VoteCount(1);
  const auto rounded = static_cast<long long>(std::ceil(continuous));
  const long long odd = (rounded % 2 == 1) ? rounded : rounded + 1;
  return VoteCount(static_cast<int>(odd));
}

EffectiveError effective_error(ReadoutError r, CnotError gamma, VoteCount n) {
  if (n.value == 1) return EffectiveError(r.rate);
  return effective_error_continuous(r, gamma, static_cast<double>(n.value));
}

EffectiveError effective_error_continuous(ReadoutError r, CnotError gamma, double n) {
  if (!(n >= 1.0)) {
    throw std::domain_error("effective_error: register axis requires N >= 1");
  }
  const double raw = r.rate + (1.0 - 2.0 * r.rate) * std::log2(n) * gamma.rate;
  return EffectiveError(std::clamp(raw, 0.0, 1.0));
}

double misid_prob_est(double n, EffectiveError r_tilde) {
  if (!(n >= 1.0)) {
    throw std::domain_error("misid_prob_est: requires N >= 1");
  }
  if (r_tilde.rate == 0.0) return 0.0;
  if (r_tilde.rate == 1.0) return 1.0;
  return reg_inc_beta(r_tilde.rate, n / 2.0, 1.0 + n / 2.0);
}

}  // namespace qvote::analytics
