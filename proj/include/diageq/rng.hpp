#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace diageq {

/// Deterministic random source. Every randomized routine takes one explicitly;
/// a fixed seed reproduces the same stream on every platform (mt19937_64 is
/// fully specified and no std distributions are used).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform_u64(std::uint64_t bound);

  /// Uniform in [0, bound). bound must be positive.
  mpz_class uniform_below(const mpz_class& bound);

  /// Uniform over integers with at most `bits` bits.
  mpz_class random_bits(unsigned bits);

 private:
  std::mt19937_64 engine_;
};

}  // namespace diageq
