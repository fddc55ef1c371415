#include "diageq/numth.hpp"

#include <string>

#include "diageq/error.hpp"

namespace diageq {

std::vector<std::uint64_t> DegreeProfile::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

DegreeProfile factor_degree(std::uint64_t d) {
  if (d == 0) throw InvalidArgument("degree must be at least 1");
  if (d > kMaxDegree) {
    throw InvalidArgument("degree " + std::to_string(d) + " exceeds supported maximum " +
                          std::to_string(kMaxDegree));
  }
  DegreeProfile profile;
  profile.d = d;
  std::uint64_t rest = d;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) profile.factors.push_back({p, e});
  }
  if (rest > 1) profile.factors.push_back({rest, 1});
  return profile;
}

PiSplit pi_split(const mpz_class& q, const DegreeProfile& profile) {
  PiSplit split;
  split.q_minus_1 = q - 1;
  mpz_class coprime = split.q_minus_1;
  for (const auto& f : profile.factors) {
    const mpz_class p = static_cast<unsigned long>(f.prime);
    while (sgn(coprime) != 0 && mpz_divisible_p(coprime.get_mpz_t(), p.get_mpz_t())) {
      coprime /= p;
    }
  }
  split.h_piprime_order = coprime;
  split.h_pi_order = split.q_minus_1 / coprime;
  return split;
}

LiftedExponent lift_exponent(std::uint64_t d, const mpz_class& q) {
  if (d == 0) throw InvalidArgument("degree must be at least 1");
  if (q < 2) throw InvalidArgument("modulus must be at least 2");
  const mpz_class qm1 = q - 1;
  const mpz_class dz = static_cast<unsigned long>(d);
  mpz_class g, s, u;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), dz.get_mpz_t(), qm1.get_mpz_t());
  // s*d + u*(q-1) = g; every t = s (mod (q-1)/g) works, take the least positive.
  const mpz_class period = qm1 / g;
  mpz_class t;
  mpz_fdiv_r(t.get_mpz_t(), s.get_mpz_t(), period.get_mpz_t());
  if (sgn(t) == 0) t = period;
  return {g.get_ui(), t};
}

std::vector<PrimePower> factor_over(const mpz_class& n, const std::vector<std::uint64_t>& primes) {
  if (sgn(n) <= 0) throw InvalidArgument("factor_over: n must be positive");
  std::vector<PrimePower> out;
  mpz_class rest = n;
  for (const std::uint64_t p : primes) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  }
  if (rest != 1) {
    throw InvalidArgument("factor_over: " + n.get_str() + " has a prime factor outside the given set");
  }
  return out;
}

std::vector<PrimePower> factor_smooth(const mpz_class& n, std::uint64_t bound) {
  if (sgn(n) <= 0) throw InvalidArgument("factor_smooth: n must be positive");
  std::vector<PrimePower> out;
  mpz_class rest = n;
  for (std::uint64_t p = 2; p <= bound && rest > 1; ++p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e > 0) out.push_back({p, e});
    if (rest > 1 && mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) {
      // rest is prime now.
      if (rest > static_cast<unsigned long>(bound)) break;
      out.push_back({rest.get_ui(), 1});
      rest = 1;
    }
  }
  if (rest != 1) {
    throw InvalidArgument("factor_smooth: " + n.get_str() + " is not " + std::to_string(bound) +
                          "-smooth");
  }
  return out;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& n) {
  if (sgn(n) <= 0) throw InvalidArgument("inverse_mod: modulus must be positive");
  if (n == 1) return 0;
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
    throw ArithmeticError("inverse_mod: " + a.get_str() + " is not invertible modulo " + n.get_str());
  }
  return r;
}

unsigned ceil_log2(std::uint64_t x) {
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace diageq
