#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "diageq/field.hpp"
#include "diageq/numth.hpp"

namespace diageq {

/// alpha = zeta_{coset_index} * beta^d, coset_index 1-based.
struct Classification {
  std::size_t coset_index;
  FieldElement beta;
};

/// Classification failed: the pi-part `gamma` of the input lies outside <eta>.
struct NeedUpdate {
  FieldElement gamma;
};

using ClassifyResult = std::variant<Classification, NeedUpdate>;

/// Incremental classification of nonzero field elements into cosets of d-th
/// powers, relative to the subgroup H = <eta> of the pi-part seen so far.
///
/// zeta_1 = 1 and zeta_i = eta^(i-1) after every update, so {zeta_i} covers
/// the cosets of H^d in H with repetitions when gcd(d, |H|) < d. A fresh state
/// has eta = 1 and all zeta_i = 1. Single owner; not thread safe.
class ClassifierState {
 public:
  ClassifierState(const PrimeField& field, std::uint64_t d);

  /// State whose generator is `eta` (which must lie in H_pi); zetas = eta^0..eta^(d-1).
  static ClassifierState with_generator(const PrimeField& field, std::uint64_t d,
                                        const FieldElement& eta);

  const PrimeField& field() const noexcept { return *field_; }
  std::uint64_t degree() const noexcept { return profile_.d; }
  const DegreeProfile& profile() const noexcept { return profile_; }
  const PiSplit& split() const noexcept { return split_; }
  const FieldElement& eta() const noexcept { return eta_; }
  const mpz_class& eta_order() const noexcept { return eta_order_; }
  const Vec& zetas() const noexcept { return zetas_; }
  /// 1-based.
  const FieldElement& zeta(std::size_t i) const { return zetas_.at(i - 1); }
  std::size_t update_count() const noexcept { return update_count_; }

  /// Writes alpha != 0 as zeta_i * beta^d. Among indices i in alpha's coset the
  /// `preferred` one is used if it matches, otherwise the smallest.
  ClassifyResult classify(const FieldElement& alpha,
                          std::optional<std::size_t> preferred = std::nullopt) const;

  /// Replaces eta by a generator of <gamma, eta> and resets the zetas.
  /// Throws InvalidArgument unless gamma is in H_pi and outside <eta>.
  void update(const FieldElement& gamma);

 private:
  void reset_zetas();

  const PrimeField* field_;
  DegreeProfile profile_;
  PiSplit split_;
  mpz_class exp_pi_;       // alpha^exp_pi_ is the H_pi component
  mpz_class root_exp_;     // d^-1 mod |H_pi'|
  FieldElement eta_;
  mpz_class eta_order_;
  std::vector<PrimePower> eta_order_factors_;
  Vec zetas_;
  std::vector<mpz_class> zeta_exponents_;  // zeta_i = eta^zeta_exponents_[i-1]
  std::size_t update_count_ = 0;
};

/// alpha = gamma * gamma' with gamma in H_pi and gamma' in H_pi'.
std::pair<FieldElement, FieldElement> decompose_pi(const FieldElement& alpha, const PiSplit& split);

/// The unique delta' in H_pi' with delta'^d = gamma'.
FieldElement root_piprime(const FieldElement& gamma_prime, std::uint64_t d, const PiSplit& split);

/// Pohlig-Hellman logarithm of gamma to base eta, where eta has order
/// `eta_order` (a smooth number). Returns x in [0, eta_order) with
/// eta^x = gamma, or nullopt when gamma is outside <eta>.
std::optional<mpz_class> smooth_dlog(const FieldElement& eta, const mpz_class& eta_order,
                                     const FieldElement& gamma);

/// Multiplicative order of x, given that it divides `multiple` whose prime
/// factors are listed in `factors`.
mpz_class element_order(const FieldElement& x, const mpz_class& multiple,
                        const std::vector<PrimePower>& factors);

}  // namespace diageq
