#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "diageq/classifier.hpp"
#include "diageq/collider.hpp"
#include "diageq/instance.hpp"

namespace diageq {

/// Vector count consumed by the accumulation path: G(d, m)^ceil(log2(d + 1)),
/// or m + 1 for d = 1.
mpz_class required_input_count(std::uint64_t d, std::uint64_t m);

/// Vector count consumed by a given path for exponent d (already reduced to
/// gcd(d, q - 1)). Strategy::automatic resolves as solve() would dispatch.
mpz_class required_count(Strategy strategy, std::uint64_t d, std::uint64_t m);

/// Nonzero x with sum a_i x_i^d = 0 for d + 1 nonzero coefficients a.
/// Las-Vegas: at most 64 d random attempts, then BudgetExhausted.
Vec single_diagonal_solve(std::span<const FieldElement> a, std::uint64_t d, SeededRng& rng);

/// A vector with 2^level disjoint-support representations
/// sum_{i in rep} c_i^d v_i = target.
struct MultiRep {
  Vec target;
  std::vector<Combination> reps;
  unsigned level = 0;
};

/// A nonempty combination with sum c_i^d v_i = 0, found before the last level.
struct EarlyZero {
  Combination terms;
};

using AccumulateResult = std::variant<MultiRep, EarlyZero, NeedUpdate>;

/// Iterated collision finding on exactly required_input_count(d, m) vectors
/// (d = state.degree() >= 2, d | q - 1).
AccumulateResult accumulate(std::span<const Vec> vectors, const ClassifierState& state);

/// A zero representation sum c_i^d v_i = 0 (c not all zero) produced by one
/// of the restartable paths, plus the number of classifier restarts it took.
struct ZeroCombination {
  Combination terms;
  std::size_t restarts = 0;
};

/// Restart loops. Each consumes a prefix of `columns` of the size the path
/// needs, grows `state` on every NeedUpdate and retries from scratch. The
/// exponent is state.degree(), which must divide q - 1.
ZeroCombination solve_quadratic(std::span<const Vec> columns, ClassifierState& state, SeededRng& rng);
ZeroCombination solve_cubic(std::span<const Vec> columns, ClassifierState& state);
ZeroCombination solve_general(std::span<const Vec> columns, ClassifierState& state, SeededRng& rng);

struct SolveOptions {
  /// Oracle enumeration bound on q^n.
  std::uint64_t cap = 10'000'000;
  /// Let Strategy::automatic fall back to exhaustive search on small instances.
  bool oracle_fallback = true;
};

/// Full pipeline: zero-column shortcut, degree lift to d' = gcd(d, q - 1),
/// dispatch, embedding into n coordinates, x -> x^t, verification.
/// Throws InsufficientVariables, StrategyUnavailable, BudgetExhausted or
/// InvariantViolation.
Solution solve(const SdeInstance& instance, Strategy strategy, SeededRng& rng,
               const SolveOptions& options = {});

}  // namespace diageq
