#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace diageq::kernels {

/// Row operations for elimination over F_p with p < 2^32, values stored as
/// reduced uint32. Every variant must produce bit-identical output to the
/// scalar reference; the AVX2 variant uses Shoup multiplication with a
/// precomputed floor(c * 2^32 / p).

/// y[i] = (y[i] + c * x[i]) mod p. Requires x, y reduced, c < p, |x| = |y|.
using AxpyFn = void (*)(std::span<std::uint32_t> y, std::span<const std::uint32_t> x,
                        std::uint32_t c, std::uint32_t p);
/// x[i] = (c * x[i]) mod p.
using ScaleFn = void (*)(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p);

enum class Isa { scalar, avx2 };

struct ModKernels {
  Isa isa;
  AxpyFn axpy;
  ScaleFn scale;
};

void axpy_mod_scalar(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
                     std::uint32_t p);
void scale_mod_scalar(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p);

#if defined(__x86_64__) || defined(__i386__)
void axpy_mod_avx2(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
                   std::uint32_t p);
void scale_mod_avx2(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p);
#endif

/// Best ISA the running CPU supports.
Isa detected_isa();

/// Throws InvalidArgument when `isa` is not available on this CPU.
const ModKernels& kernels_for(Isa isa);

/// Kernels for detected_isa(), unless overridden by force_isa().
const ModKernels& active_kernels();

/// Test hook: pin the dispatch (e.g. to compare paths end to end).
void force_isa(Isa isa);
void reset_isa();

std::string_view isa_name(Isa isa);

}  // namespace diageq::kernels
