#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "diageq/field.hpp"
#include "diageq/linalg.hpp"

namespace diageq {

/// Solving strategy requested by the caller.
enum class Strategy { automatic, general, quadratic, cubic, linear, oracle };

/// The procedure that actually produced a solution.
enum class SolvePath { zero_column, linear, quadratic, cubic, general, oracle };

std::string_view to_string(Strategy s);
std::string_view to_string(SolvePath p);
/// Accepts "auto" for Strategy::automatic. Throws InvalidArgument.
Strategy parse_strategy(std::string_view text);

/// m diagonal equations sum_j a_ij x_j^d = 0 in n unknowns over F_q.
/// Column j of `coeffs` is the vector v_j.
class SdeInstance {
 public:
  SdeInstance(std::shared_ptr<const PrimeField> field, std::uint64_t d, FieldMatrix coeffs);

  const PrimeField& field() const noexcept { return *field_; }
  const std::shared_ptr<const PrimeField>& field_ptr() const noexcept { return field_; }
  std::uint64_t degree() const noexcept { return d_; }
  std::size_t equations() const noexcept { return coeffs_.rows(); }
  std::size_t variables() const noexcept { return coeffs_.cols(); }
  const FieldMatrix& coeffs() const noexcept { return coeffs_; }
  const std::vector<Vec>& columns() const noexcept { return columns_; }

  /// Uniformly random coefficients.
  static SdeInstance random(std::shared_ptr<const PrimeField> field, std::uint64_t d, std::size_t m,
                            std::size_t n, SeededRng& rng);

 private:
  std::shared_ptr<const PrimeField> field_;
  std::uint64_t d_;
  FieldMatrix coeffs_;
  std::vector<Vec> columns_;
};

struct SolveStats {
  std::size_t restarts = 0;
  SolvePath path = SolvePath::linear;
  std::size_t vectors_used = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct Solution {
  Vec x;
  SolveStats stats;
};

/// True iff x != 0 and every equation evaluates to zero. Throws on length mismatch.
bool verify(const SdeInstance& instance, std::span<const FieldElement> x);

}  // namespace diageq
