#pragma once

#include <cstdint>
#include <random>

#include "epg/errors.hpp"

namespace epg {

/// Seeded generator with a pinned derivation contract. std::mt19937_64 output
/// is fully standardized, and every helper below reduces it with fixed
/// arithmetic, so one seed yields one byte-identical stream on any platform.
/// std::uniform_int_distribution and friends are deliberately not used; their
/// reduction is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by modulo reduction; bound >= 1. The modulo bias
  /// is below 2^-32 for our bounds and is part of the pinned contract.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParamsError("next_below bound must be positive");
    return next_u64() % bound;
  }

  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidParamsError("next_in range is empty");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // span wraps to 0 only for the full int64 range; then any value is fair.
    const std::uint64_t u = span == 0 ? next_u64() : next_below(span);
    return lo + static_cast<std::int64_t>(u);
  }

  /// One draw is consumed whatever p is, so call sites keep a fixed stream
  /// shape. p=0 never fires, p=1 always fires.
  bool bernoulli(double p) { return next_unit() < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace epg
