// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>

namespace qvote {

/// Algorithm identifier embedded in result metadata so tables can be traced
/// back to the exact generator that produced them.
inline constexpr const char* kRngAlgorithmId = "xoshiro256++ seeded by splitmix64(seed, stream)";

/// Deterministic random stream addressed by (seed, stream_id).
///
/// The four xoshiro256++ state words come from a SplitMix64 chain keyed by
/// both the seed and the stream id, so streams with distinct ids are
/// decorrelated and any (seed, id) pair replays bit-identically on every
/// platform: only unsigned 64-bit arithmetic is involved, and doubles are
/// produced by the fixed (x >> 11) * 2^-53 mapping rather than
/// implementation-defined library distributions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  /// Single uniform draw compared against p; p <= 0 never fires, p >= 1
  /// always does. Exactly one draw is consumed either way.
  bool bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace qvote
