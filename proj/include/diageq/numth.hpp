#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace diageq {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

/// Factorization of the degree d. `primes()` is the set pi of primes dividing d.
struct DegreeProfile {
  std::uint64_t d = 1;
  std::vector<PrimePower> factors;

  std::vector<std::uint64_t> primes() const;
};

/// Orders of the pi-part and pi'-part of F_q^*.
struct PiSplit {
  mpz_class h_pi_order;
  mpz_class h_piprime_order;
  mpz_class q_minus_1;
};

struct LiftedExponent {
  std::uint64_t d_prime;  // gcd(d, q-1)
  mpz_class t;            // least positive t with t*d = d_prime (mod q-1)
};

inline constexpr std::uint64_t kMaxDegree = 1'000'000;

/// Trial division. Throws InvalidArgument for d = 0 or d > kMaxDegree.
DegreeProfile factor_degree(std::uint64_t d);

/// Splits q-1 into its largest divisor coprime to d and the cofactor.
PiSplit pi_split(const mpz_class& q, const DegreeProfile& profile);

/// Degree reduction: with (d', t) returned, (x^t)^d = x^d' for every x != 0.
LiftedExponent lift_exponent(std::uint64_t d, const mpz_class& q);

/// Factors n over the given primes. Throws InvalidArgument if a cofactor > 1 remains.
std::vector<PrimePower> factor_over(const mpz_class& n, const std::vector<std::uint64_t>& primes);

/// Trial-division factorization of a positive n whose prime factors are all <= bound.
/// Throws InvalidArgument otherwise.
std::vector<PrimePower> factor_smooth(const mpz_class& n, std::uint64_t bound = kMaxDegree);

/// Inverse of a modulo n (n > 0). Returns 0 when n = 1; throws if not invertible.
mpz_class inverse_mod(const mpz_class& a, const mpz_class& n);

/// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(std::uint64_t x);

}  // namespace diageq
