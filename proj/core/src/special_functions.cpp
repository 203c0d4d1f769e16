// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qvote::analytics {

namespace {

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a+1)/(a+b+2); the caller mirrors the arguments otherwise.
long double beta_continued_fraction(long double a, long double b, long double x) {
  constexpr long double kTiny = 1e-300L;
  constexpr long double kEps = 1e-19L;
  const long double qab = a + b;
  const long double qap = a + 1.0L;
  const long double qam = a - 1.0L;

  long double c = 1.0L;
  long double d = 1.0L - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0L / d;
  long double h = d;

  for (int m = 1; m <= 500; ++m) {
    const long double m2 = 2.0L * m;
    long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0L + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0L + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    const long double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0L) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("reg_inc_beta: x must lie in [0, 1], got " + std::to_string(x));
  }
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("reg_inc_beta: a and b must be positive");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const long double al = a;
  const long double bl = b;
  const long double xl = x;
  // log of x^a (1-x)^b / B(a,b); expl() keeps tails far below double range
  // meaningful once divided by a or b.
  const long double log_front = std::lgamma(al + bl) - std::lgamma(al) - std::lgamma(bl) +
                                al * std::log(xl) + bl * std::log1p(-xl);
  const long double front = std::exp(log_front);

  long double result;
  if (xl < (al + 1.0L) / (al + bl + 2.0L)) {
    result = front * beta_continued_fraction(al, bl, xl) / al;
  } else {
    result = 1.0L - front * beta_continued_fraction(bl, al, 1.0L - xl) / bl;
  }
  if (result < 0.0L) return 0.0;
  if (result > 1.0L) return 1.0;
  return static_cast<double>(result);
}

double lambert_w0(double z) {
  constexpr double kInvE = 0.36787944117144232160;  // 1/e
  if (z < -kInvE) {
    throw std::domain_error("lambert_w0: argument below -1/e, got " + std::to_string(z));
  }
  if (z == 0.0) return 0.0;

  const long double zl = z;
  constexpr long double kE = 2.718281828459045235L;
  const long double branch_offset = 1.0L + kE * zl;  // 0 at the branch point

  // So close to -1/e that Halley's denominator degenerates: the square-root
  // series is already more accurate than double.
  if (branch_offset < 1e-9L) {
    const long double p = std::sqrt(std::max(0.0L, 2.0L * branch_offset));
    return static_cast<double>(-1.0L + p - p * p / 3.0L + 11.0L / 72.0L * p * p * p);
  }

  long double w;
  if (zl < -0.25L) {
    const long double p = std::sqrt(2.0L * branch_offset);
    w = -1.0L + p - p * p / 3.0L;
  } else if (zl < kE) {
    w = std::log1p(zl);  // crude but monotone; Halley does the rest
  } else {
    const long double l = std::log(zl);
    const long double ll = std::log(l);
    w = l - ll + ll / l;
  }

  const long double tol = 0x1p-52L * std::max(1.0L, std::fabs(zl));
  for (int i = 0; i < 20; ++i) {
    const long double ew = std::exp(w);
    const long double f = w * ew - zl;
    if (std::fabs(f) <= tol) break;
    const long double denom = ew * (w + 1.0L) - (w + 2.0L) * f / (2.0L * w + 2.0L);
    w -= f / denom;
  }
  return static_cast<double>(w);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) {
    throw std::domain_error("log_binomial: requires 0 <= k <= n");
  }
  const long double nl = n;
  const long double kl = k;
  return static_cast<double>(std::lgamma(nl + 1.0L) - std::lgamma(kl + 1.0L) -
                             std::lgamma(nl - kl + 1.0L));
}

}  // namespace qvote::analytics
