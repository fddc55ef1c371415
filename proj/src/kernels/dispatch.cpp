#include <atomic>

#include "diageq/error.hpp"
#include "diageq/kernels.hpp"

namespace diageq::kernels {

namespace {

constexpr ModKernels kScalar{Isa::scalar, axpy_mod_scalar, scale_mod_scalar};
#if defined(__x86_64__) || defined(__i386__)
constexpr ModKernels kAvx2{Isa::avx2, axpy_mod_avx2, scale_mod_avx2};
#endif

std::atomic<int> forced{-1};

}  // namespace

Isa detected_isa() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  if (has_avx2) return Isa::avx2;
#endif
  return Isa::scalar;
}

const ModKernels& kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return kScalar;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      if (detected_isa() == Isa::avx2) return kAvx2;
#endif
      break;
  }
  throw InvalidArgument("kernel ISA " + std::string(isa_name(isa)) + " not available on this CPU");
}

const ModKernels& active_kernels() {
  const int f = forced.load(std::memory_order_relaxed);
  return kernels_for(f < 0 ? detected_isa() : static_cast<Isa>(f));
}

void force_isa(Isa isa) {
  kernels_for(isa);
  forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { forced.store(-1, std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace diageq::kernels
