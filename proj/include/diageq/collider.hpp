#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "diageq/classifier.hpp"
#include "diageq/field.hpp"

namespace diageq {

/// A tuple (a_1, ..., a_l) with entries in [1, d]. Ordered lexicographically,
/// which is also the order of rank().
class TupleKey {
 public:
  TupleKey() = default;
  explicit TupleKey(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {}

  /// The tuple with the given lexicographic rank among [1, d]^length.
  static TupleKey from_rank(std::size_t rank, std::uint64_t d, std::size_t length);

  /// (1, 2, ..., length).
  static TupleKey identity(std::size_t length);

  std::size_t length() const noexcept { return entries_.size(); }
  std::uint32_t operator[](std::size_t j) const { return entries_.at(j); }
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }

  /// Rank in lexicographic order; throws if an entry is outside [1, d].
  std::size_t rank(std::uint64_t d) const;

  /// Copy with position j (0-based) replaced by s.
  TupleKey with(std::size_t j, std::uint32_t s) const;

  /// Copy with s appended.
  TupleKey extended(std::uint32_t s) const;

  auto operator<=>(const TupleKey&) const = default;

 private:
  std::vector<std::uint32_t> entries_;
};

/// A coefficient attached to an input vector index.
struct Term {
  std::size_t index;
  FieldElement coeff;
};

using Combination = std::vector<Term>;

/// Group sizing for the d-cube recursion. `dcube` uses d^l (m + 1) groups at
/// step l -> l + 1; `tight` uses d^l m + 1, the minimum that still forces a
/// dependency (the three-level cubic construction).
enum class GroupSizing { dcube, tight };

/// Output of the d-cube recursion at `level`: pairwise disjoint supports J_a
/// (indices into the input slice), coefficients beta_i, and the vectors
/// w_a = sum_{i in J_a} beta_i^d v_i, all indexed by TupleKey rank.
struct DCubeFamily {
  unsigned level = 0;
  std::uint64_t d = 1;
  std::size_t dimension = 0;
  std::vector<std::vector<std::size_t>> supports;  // by rank
  std::vector<Vec> w;                              // by rank
  std::vector<std::optional<FieldElement>> beta;   // by input index; set iff in a support
  Vec zetas;

  std::size_t tuple_count() const noexcept { return supports.size(); }
  const std::vector<std::size_t>& support(const TupleKey& a) const { return supports.at(a.rank(d)); }
  const Vec& w_vector(const TupleKey& a) const { return w.at(a.rank(d)); }
};

/// Colliding representations: sum_{I} gamma^d v = sum_{J} gamma^d v.
struct Collision {
  Combination I;
  Combination J;
};

using DCubeResult = std::variant<DCubeFamily, NeedUpdate>;
using CollideResult = std::variant<Collision, NeedUpdate>;

/// B_l(d, m) = d^(l(l-1)/2) (m+1)^l vectors for the recursion (or the tight
/// product for GroupSizing::tight). Throws InvalidArgument unless 1 <= l <= d.
mpz_class required_vectors(std::uint64_t d, std::uint64_t m, unsigned level,
                           GroupSizing sizing = GroupSizing::dcube);

/// G(d, m) = B_d(d, m).
mpz_class collision_count(std::uint64_t d, std::uint64_t m, GroupSizing sizing = GroupSizing::dcube);

/// The d-cube recursion. `vectors` must hold exactly required_vectors(d, m, level)
/// vectors of dimension m, and d must divide q - 1. d is state.degree().
DCubeResult dcube(std::span<const Vec> vectors, unsigned level, const ClassifierState& state,
                  GroupSizing sizing = GroupSizing::dcube);

/// Splits a level-d family by permutation parity: I collects even
/// permutations, J odd ones, gamma_i = beta_i.
Collision collision_from_family(const DCubeFamily& family);

/// dcube at level d followed by collision_from_family.
CollideResult collide(std::span<const Vec> vectors, const ClassifierState& state,
                      GroupSizing sizing = GroupSizing::dcube);

/// +1 for even permutations of (1..d), -1 for odd. Throws on repeated entries.
int perm_sign(const TupleKey& a);

/// All permutations of (1..d) as tuples, in lexicographic order.
std::vector<TupleKey> permutations(std::size_t d);

}  // namespace diageq
