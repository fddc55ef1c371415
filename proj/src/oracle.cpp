#include "diageq/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "diageq/error.hpp"

namespace diageq {

namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t q) {
  unsigned __int128 result = 1 % q;
  unsigned __int128 b = base % q;
  while (e > 0) {
    if (e & 1) result = result * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

bool oracle_applicable(const SdeInstance& instance, std::uint64_t cap) {
  mpz_class space;
  mpz_pow_ui(space.get_mpz_t(), instance.field().modulus().get_mpz_t(), instance.variables());
  return mpz_cmp_ui(space.get_mpz_t(), cap) <= 0;
}

std::optional<Solution> brute_solve(const SdeInstance& instance, std::uint64_t cap) {
  if (!oracle_applicable(instance, cap)) {
    throw InvalidArgument("brute_solve: q^n exceeds the enumeration cap " + std::to_string(cap));
  }
  const auto start = std::chrono::steady_clock::now();
  const PrimeField& field = instance.field();
  const std::uint64_t q = field.modulus().get_ui();
  const std::size_t n = instance.variables();
  const std::size_t m = instance.equations();

  std::vector<std::uint64_t> power(q);
  for (std::uint64_t x = 0; x < q; ++x) power[x] = powmod(x, instance.degree(), q);
  std::vector<std::vector<std::uint64_t>> a(m, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = instance.coeffs().at(i, j).value().get_ui();
  }

  // Odometer with the last coordinate fastest, so the first hit is the
  // lexicographic minimum. Row sums are updated incrementally.
  std::vector<std::uint64_t> x(n, 0);
  std::vector<std::uint64_t> sums(m, 0);
  for (;;) {
    std::size_t j = n;
    bool carried_out = true;
    while (j-- > 0) {
      const std::uint64_t old = x[j];
      const std::uint64_t next = old + 1 == q ? 0 : old + 1;
      const std::uint64_t delta = (power[next] + q - power[old]) % q;
      for (std::size_t i = 0; i < m; ++i) sums[i] = (sums[i] + a[i][j] * delta) % q;
      x[j] = next;
      if (next != 0) {
        carried_out = false;
        break;
      }
    }
    if (carried_out) return std::nullopt;
    if (std::all_of(sums.begin(), sums.end(), [](std::uint64_t s) { return s == 0; })) break;
  }

  Solution sol;
  for (const auto v : x) sol.x.push_back(field.element(static_cast<long>(v)));
  sol.stats.path = SolvePath::oracle;
  sol.stats.vectors_used = n;
  sol.stats.elapsed = std::chrono::steady_clock::now() - start;
  return sol;
}

bool ResidueTable::contains(std::uint64_t x) const {
  return std::binary_search(powers.begin(), powers.end(), x);
}

ResidueTable residues(std::uint64_t q, std::uint64_t d) {
  if (q < 2 || q > 1'000'000) throw InvalidArgument("residues: q must lie in [2, 10^6]");
  ResidueTable t{q, d, {}};
  for (std::uint64_t x = 0; x < q; ++x) t.powers.push_back(powmod(x, d, q));
  std::sort(t.powers.begin(), t.powers.end());
  t.powers.erase(std::unique(t.powers.begin(), t.powers.end()), t.powers.end());
  return t;
}

}  // namespace diageq
