#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "diageq/rng.hpp"

namespace diageq {

class FieldElement;

/// The prime field F_q for an arbitrary-size prime q.
///
/// Elements hold a pointer to their field, so a PrimeField must outlive every
/// element created from it and must not be moved while elements exist. Code that
/// passes fields around holds them through std::shared_ptr<const PrimeField>.
class PrimeField {
 public:
  /// Throws InvalidArgument unless q is a probable prime (64 Miller-Rabin rounds).
  explicit PrimeField(mpz_class q);

  /// Parses a decimal modulus.
  static PrimeField from_decimal(std::string_view text);

  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;

  const mpz_class& modulus() const noexcept { return q_; }
  const mpz_class& order_minus_one() const noexcept { return q_minus_1_; }
  std::size_t bits() const { return mpz_sizeinbase(q_.get_mpz_t(), 2); }
  bool is_odd() const { return mpz_odd_p(q_.get_mpz_t()) != 0; }

  /// Reduces `value` into [0, q).
  FieldElement element(const mpz_class& value) const;
  FieldElement element(long value) const;
  FieldElement zero() const;
  FieldElement one() const;

  FieldElement random(SeededRng& rng) const;
  FieldElement random_nonzero(SeededRng& rng) const;

  bool same_as(const PrimeField& other) const noexcept {
    return this == &other || q_ == other.q_;
  }

 private:
  mpz_class q_;
  mpz_class q_minus_1_;
};

/// A residue in [0, q). Immutable value type.
class FieldElement {
 public:
  /// `value` must already be reduced.
  FieldElement(const PrimeField& field, mpz_class value) noexcept
      : value_(std::move(value)), field_(&field) {}

  const mpz_class& value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return *field_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const;

  FieldElement& operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
  FieldElement& operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
  FieldElement& operator*=(const FieldElement& rhs) { return *this = *this * rhs; }

  /// Throws ArithmeticError on zero.
  FieldElement inverse() const;

  bool operator==(const FieldElement& rhs) const {
    return field_->same_as(*rhs.field_) && value_ == rhs.value_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  void check_same_field(const FieldElement& rhs) const;

  mpz_class value_;
  const PrimeField* field_;
};

using Vec = std::vector<FieldElement>;

/// a^e by square-and-multiply. Negative e inverts first; throws for 0^(negative).
FieldElement pow(const FieldElement& a, const mpz_class& e);
FieldElement pow(const FieldElement& a, long e);

/// Tonelli-Shanks. `nonresidue` must satisfy nonresidue^((q-1)/2) = -1.
/// Returns r with r^2 = a, or nullopt when a is not a square.
std::optional<FieldElement> sqrt(const FieldElement& a, const FieldElement& nonresidue);

/// Returns r with r^d = a, or nullopt when a is not a d-th power.
/// Routes through per-prime-power Adleman-Manders-Miller root extraction;
/// the returned root is always checked by re-powering.
std::optional<FieldElement> dth_root(const FieldElement& a, std::uint64_t d, SeededRng& rng);

/// Samples zeta with zeta^((q-1)/l) != 1, l the prime underlying `prime_power`.
/// Throws InvalidArgument if l does not divide q-1 and BudgetExhausted after
/// `max_attempts` residues in a row.
FieldElement sample_nonresidue(const PrimeField& field, std::uint64_t prime_power,
                               SeededRng& rng, int max_attempts = 256);

/// Discrete log of `target` to base `generator` of order prime^exponent, digit
/// by digit with a linear scan over the prime-order subgroup. Returns nullopt
/// when target is outside <generator>.
std::optional<mpz_class> dlog_prime_power(const FieldElement& generator,
                                          std::uint64_t prime, unsigned exponent,
                                          const FieldElement& target);

}  // namespace diageq
