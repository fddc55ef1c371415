#include "diageq/rng.hpp"

#include "diageq/error.hpp"

namespace diageq {

std::uint64_t SeededRng::uniform_u64(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidArgument("uniform_u64: bound must be positive");
  }
  // Rejection on the top multiple of bound keeps the draw unbiased.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

mpz_class SeededRng::random_bits(unsigned bits) {
  mpz_class out = 0;
  unsigned filled = 0;
  while (filled < bits) {
    const unsigned take = std::min(64u, bits - filled);
    std::uint64_t word = engine_();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    mpz_class chunk;
    mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    out += chunk << filled;
    filled += take;
  }
  return out;
}

mpz_class SeededRng::uniform_below(const mpz_class& bound) {
  if (sgn(bound) <= 0) {
    throw InvalidArgument("uniform_below: bound must be positive");
  }
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  for (;;) {
    mpz_class x = random_bits(bits);
    if (x < bound) return x;
  }
}

}  // namespace diageq
