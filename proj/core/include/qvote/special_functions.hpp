// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

namespace qvote::analytics {

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated with the modified-Lentz continued fraction, switching to the
/// mirrored fraction through I_x(a,b) = 1 - I_{1-x}(b,a) once
/// x > (a+1)/(a+b+2). The prefactor x^a (1-x)^b / (a B(a,b)) is assembled in
/// log space with 80-bit intermediates, so deep binomial tails (1e-20 and
/// below) keep full relative precision instead of underflowing term by term.
/// Absolute error stays below 1e-13 on [0,1]; relative error is ~1e-15 even
/// for tail values near 1e-70.
///
/// Throws std::domain_error for x outside [0,1] or non-positive a, b.
double reg_inc_beta(double x, double a, double b);

/// Principal branch W_0 of the Lambert W function: the w >= -1 solving
/// w e^w = z, defined for z >= -1/e.
///
/// Initial guess from the branch-point square-root series below z = e and the
/// two-term log asymptote above, polished by Halley iteration until the
/// residual |w e^w - z| drops under 2^-50 * max(1, |z|); at most five steps
/// are needed anywhere in the domain.
///
/// Throws std::domain_error for z < -1/e.
double lambert_w0(double z);

/// log C(n, k) via log-gamma. Requires 0 <= k <= n.
double log_binomial(int n, int k);

}  // namespace qvote::analytics
