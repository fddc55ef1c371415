#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diageq/instance.hpp"

namespace diageq {

/// Exhaustive search over F_q^n for tiny instances. Returns the
/// lexicographically smallest nonzero solution (x_1 most significant), or
/// nullopt when only the zero vector solves the system. Throws
/// InvalidArgument when q^n > cap.
std::optional<Solution> brute_solve(const SdeInstance& instance, std::uint64_t cap = 10'000'000);

/// q^n <= cap.
bool oracle_applicable(const SdeInstance& instance, std::uint64_t cap);

/// All d-th powers in F_q (including 0), sorted.
struct ResidueTable {
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  std::vector<std::uint64_t> powers;

  bool contains(std::uint64_t x) const;
};

/// Exact enumeration; throws InvalidArgument for q > 10^6.
ResidueTable residues(std::uint64_t q, std::uint64_t d);

}  // namespace diageq
