// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace spo {

/// splitmix64; the only randomness source, so reports are reproducible from the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
  }

  /// Test coefficient in {-3..3}.
  long coeff() { return uniform(-3, 3); }

  /// Nonzero test coefficient.
  long coeff_nonzero() {
    long c = 0;
    while (c == 0) c = coeff();
    return c;
  }

 private:
  std::uint64_t s_;
};

}  // namespace spo
