// Compiled with -mavx2; only reached through dispatch after a CPU check.
#include <immintrin.h>

#include "diageq/kernels.hpp"

namespace diageq::kernels {

namespace {

// Shoup product c*x mod p for the even 32-bit lanes of x (odd lanes ignored),
// returned in the low half of each 64-bit lane.
inline __m256i mulmod_even(__m256i x, __m256i c, __m256i c_shoup, __m256i p64) {
  const __m256i prod = _mm256_mul_epu32(x, c);
  const __m256i quot = _mm256_srli_epi64(_mm256_mul_epu32(x, c_shoup), 32);
  __m256i r = _mm256_sub_epi64(prod, _mm256_mul_epu32(quot, p64));  // [0, 2p)
  const __m256i below = _mm256_cmpgt_epi64(p64, r);
  return _mm256_blendv_epi8(_mm256_sub_epi64(r, p64), r, below);
}

// All eight lanes of c*x mod p.
inline __m256i mulmod8(__m256i x, __m256i c, __m256i c_shoup, __m256i p64) {
  const __m256i even = mulmod_even(x, c, c_shoup, p64);
  const __m256i odd = mulmod_even(_mm256_srli_epi64(x, 32), c, c_shoup, p64);
  return _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
}

// (y + r) mod p for reduced y, r without leaving 32 bits.
inline __m256i addmod8(__m256i y, __m256i r, __m256i p32) {
  const __m256i gap = _mm256_sub_epi32(p32, r);  // in (0, p]
  const __m256i wraps = _mm256_cmpeq_epi32(_mm256_max_epu32(y, gap), y);
  return _mm256_blendv_epi8(_mm256_add_epi32(y, r), _mm256_sub_epi32(y, gap), wraps);
}

inline std::uint32_t shoup_constant(std::uint32_t c, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
}

}  // namespace

void axpy_mod_avx2(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
                   std::uint32_t p) {
  const std::size_t n = y.size();
  const std::size_t body = n - n % 8;
  const __m256i cv = _mm256_set1_epi64x(c);
  const __m256i cs = _mm256_set1_epi64x(shoup_constant(c, p));
  const __m256i p64 = _mm256_set1_epi64x(p);
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(p));
  for (std::size_t i = 0; i < body; i += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x.data() + i));
    const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y.data() + i));
    const __m256i r = mulmod8(xv, cv, cs, p64);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y.data() + i), addmod8(yv, r, p32));
  }
  axpy_mod_scalar(y.subspan(body), x.subspan(body), c, p);
}

void scale_mod_avx2(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % 8;
  const __m256i cv = _mm256_set1_epi64x(c);
  const __m256i cs = _mm256_set1_epi64x(shoup_constant(c, p));
  const __m256i p64 = _mm256_set1_epi64x(p);
  for (std::size_t i = 0; i < body; i += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(x.data() + i), mulmod8(xv, cv, cs, p64));
  }
  scale_mod_scalar(x.subspan(body), c, p);
}

}  // namespace diageq::kernels
