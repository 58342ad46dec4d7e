#pragma once

#include <cstdint>

namespace rotwalk {

/// Counter-based stream keyed by (master seed, trial index). Every output is
/// a pure function of (seed, trial, counter), so trials can run on any thread
/// schedule and still reproduce bit-identically.
///
/// Mixing is splitmix64 (Steele, Lea, Flood 2014 gamma/finalizer constants).
struct TrialStream {
  uint64_t key;

  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static constexpr uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  TrialStream(uint64_t master_seed, uint64_t trial)
      : key(mix(master_seed + kGamma) ^ mix(trial * kGamma + 0x6a09e667f3bcc909ull)) {}

  uint64_t at(uint64_t counter) const { return mix(key + counter * kGamma); }

  /// 53-bit uniform in [0, 1).
  double uniform01(uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }
};

}  // namespace rotwalk
