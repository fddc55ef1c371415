#include "diageq/kernels.hpp"

namespace diageq::kernels {

void axpy_mod_scalar(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
                     std::uint32_t p) {
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::uint64_t t = cc * x[i] % p + y[i];
    y[i] = static_cast<std::uint32_t>(t >= p ? t - p : t);
  }
}

void scale_mod_scalar(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p) {
  const std::uint64_t cc = c;
  for (auto& v : x) v = static_cast<std::uint32_t>(cc * v % p);
}

}  // namespace diageq::kernels
