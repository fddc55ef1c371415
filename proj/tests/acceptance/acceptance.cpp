// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "diageq/error.hpp"
#include "diageq/numth.hpp"
#include "diageq/oracle.hpp"
#include "diageq/solver.hpp"
#include "invariants.hpp"

using namespace diageq;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void fail(const std::string& why) {
    if (failures_++ < 5) std::cerr << "    violation: " << why << '\n';
  }
  void check(bool ok, const std::string& why) {
    ++checks_;
    if (!ok) fail(why);
  }
  std::size_t failures() const { return failures_; }
  std::size_t checks() const { return checks_; }

 private:
  std::size_t failures_ = 0;
  std::size_t checks_ = 0;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::shared_ptr<const PrimeField> prime_field(unsigned bits, std::uint64_t d, SeededRng& rng) {
  return std::make_shared<const PrimeField>(cli::random_prime(bits, d, rng));
}

// 2^restarts <= q.
bool restarts_within_log2q(std::size_t restarts, const PrimeField& f) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, restarts);
  return p <= f.modulus();
}

std::string describe(const SdeInstance& inst, std::uint64_t seed) {
  std::ostringstream s;
  s << "q=" << inst.field().modulus().get_str() << " d=" << inst.degree() << " m=" << inst.equations()
    << " n=" << inst.variables() << " seed=" << seed;
  return s.str();
}

// Solves, checks the result independently and records the slowest run.
void solve_and_check(const SdeInstance& inst, Strategy strategy, std::uint64_t seed, Tally& t, double& worst,
                     bool check_restarts = true) {
  SeededRng rng(seed);
  try {
    const auto start = Clock::now();
    const Solution sol = solve(inst, strategy, rng);
    worst = std::max(worst, seconds_since(start));
    t.check(checks::solves(inst, sol.x), "unverified solution " + describe(inst, seed));
    if (check_restarts) {
      t.check(restarts_within_log2q(sol.stats.restarts, inst.field()),
              std::to_string(sol.stats.restarts) + " restarts " + describe(inst, seed));
    }
  } catch (const std::exception& e) {
    t.fail(std::string("solve threw: ") + e.what() + " " + describe(inst, seed));
  }
}

Outcome quadratic_path() {
  Tally t;
  double worst_big = 0, worst = 0;
  std::uint64_t seed = 1000;
  for (unsigned bits : {5u, 32u, 128u}) {
    for (std::size_t m : {1u, 2u, 5u, 20u, 50u}) {
      double& w = (bits == 128 && m == 50) ? worst_big : worst;
      for (int k = 0; k < 200; ++k, ++seed) {
        SeededRng gen(seed);
        const auto inst = SdeInstance::random(prime_field(bits, 2, gen), 2, m, (m + 1) * (m + 1), gen);
        solve_and_check(inst, Strategy::quadratic, seed, t, w);
      }
    }
  }
  t.check(worst_big < 10.0, "m=50/128-bit took " + fmt(worst_big) + " s");
  return {t.failures() == 0, std::to_string(t.checks()) + " checks, slowest m=50/128-bit " + fmt(worst_big) + " s"};
}

Outcome cubic_path() {
  Tally t;
  double worst_big = 0, worst = 0;
  std::uint64_t seed = 2000;
  const unsigned bit_cycle[] = {5, 32, 128};
  for (std::size_t m : {1u, 2u, 5u, 10u}) {
    double& w = m == 10 ? worst_big : worst;
    for (int k = 0; k < 50; ++k, ++seed) {
      SeededRng gen(seed);
      const std::size_t n = (9 * m + 1) * (3 * m + 1) * (m + 1);
      const auto inst = SdeInstance::random(prime_field(bit_cycle[k % 3], 3, gen), 3, m, n, gen);
      solve_and_check(inst, Strategy::cubic, seed, t, w);
    }
  }
  t.check(worst_big < 60.0, "m=10 took " + fmt(worst_big) + " s");
  return {t.failures() == 0, std::to_string(t.checks()) + " checks, slowest m=10 " + fmt(worst_big) + " s"};
}

Outcome general_path() {
  Tally t;
  double worst = 0;
  std::uint64_t seed = 3000;
  struct Cell {
    std::uint64_t d, m;
    std::size_t n;
    int runs;
  };
  const unsigned bit_cycle[] = {32, 64, 128, 5};
  for (const Cell c : {Cell{2, 1, 64, 12}, Cell{2, 2, 324, 12}, Cell{2, 3, 1024, 12}, Cell{3, 1, 46656, 8}}) {
    t.check(required_input_count(c.d, c.m) == c.n, "required_input_count mismatch");
    for (int k = 0; k < c.runs; ++k, ++seed) {
      SeededRng gen(seed);
      const auto inst = SdeInstance::random(prime_field(bit_cycle[k % 4], c.d, gen), c.d, c.m, c.n, gen);
      solve_and_check(inst, Strategy::general, seed, t, worst);
    }
  }
  t.check(worst < 120.0, "general run took " + fmt(worst) + " s");
  return {t.failures() == 0, std::to_string(t.checks()) + " checks, slowest " + fmt(worst) + " s"};
}

Outcome dcube_identity() {
  Tally t;
  std::uint64_t seed = 4000;
  const unsigned bit_cycle[] = {5, 32, 128};
  for (std::uint64_t d : {2u, 3u}) {
    for (unsigned level = 1; level <= d; ++level) {
      for (int k = 0; k < 100; ++k, ++seed) {
        SeededRng gen(seed);
        const auto f = prime_field(bit_cycle[k % 3], d, gen);
        const std::size_t m = 1 + k % 2;
        const auto v = checks::random_vectors(*f, required_vectors(d, m, level).get_ui(), m, gen);
        ClassifierState state(*f, d);
        try {
          const auto res = checks::retry(state, [&] { return dcube(v, level, state); });
          const auto bad = checks::family_violations(std::get<DCubeFamily>(res), v, f->modulus());
          t.check(bad.empty(), bad.empty() ? "" : bad.front() + " (d=" + std::to_string(d) + ", l=" + std::to_string(level) + ")");
        } catch (const std::exception& e) {
          t.fail(std::string("dcube threw: ") + e.what());
        }
      }
    }
  }
  return {t.failures() == 0, std::to_string(t.checks()) + " families checked"};
}

Outcome collisions() {
  Tally t;
  std::uint64_t seed = 5000;
  const unsigned bit_cycle[] = {5, 32, 128};
  for (std::uint64_t d : {2u, 3u}) {
    for (std::size_t m : {1u, 2u}) {
      for (int k = 0; k < 100; ++k, ++seed) {
        SeededRng gen(seed);
        const auto f = prime_field(bit_cycle[k % 3], d, gen);
        const auto v = checks::random_vectors(*f, collision_count(d, m).get_ui(), m, gen);
        ClassifierState state(*f, d);
        try {
          const auto res = checks::retry(state, [&] { return dcube(v, static_cast<unsigned>(d), state); });
          const auto& fam = std::get<DCubeFamily>(res);
          t.check(checks::signed_sum_vanishes(fam, f->modulus()), "signed sum nonzero");
          const auto bad = checks::collision_violations(collision_from_family(fam), v, d, f->modulus());
          t.check(bad.empty(), bad.empty() ? "" : bad.front());
        } catch (const std::exception& e) {
          t.fail(std::string("collide threw: ") + e.what());
        }
      }
    }
  }
  return {t.failures() == 0, std::to_string(t.checks()) + " checks"};
}

Outcome oracle_equivalence() {
  Tally t;
  std::size_t instances = 0, solved = 0;
  SeededRng gen(6000);
  SolveOptions no_fallback;
  no_fallback.oracle_fallback = false;
  for (std::uint64_t q : {3u, 5u, 7u, 11u, 13u}) {
    auto f = std::make_shared<const PrimeField>(mpz_class(static_cast<unsigned long>(q)));
    for (std::uint64_t d : {1u, 2u, 3u}) {
      for (std::size_t n = 1; n <= 6; ++n) {
        mpz_class space;
        mpz_ui_pow_ui(space.get_mpz_t(), q, n);
        if (space > 10'000'000) continue;
        for (std::size_t m : {1u, 2u}) {
          // Every coefficient matrix when there are few, otherwise a random sample.
          mpz_class matrices;
          mpz_ui_pow_ui(matrices.get_mpz_t(), q, m * n);
          const bool exhaustive = matrices <= 2000;
          const std::size_t count = exhaustive ? matrices.get_ui() : 20;
          for (std::size_t code = 0; code < count; ++code) {
            FieldMatrix coeffs(*f, m, n);
            std::size_t c = code;
            for (std::size_t i = 0; i < m; ++i) {
              for (std::size_t j = 0; j < n; ++j) {
                const std::uint64_t v = exhaustive ? c % q : gen.uniform_u64(q);
                c /= q;
                coeffs.set(i, j, f->element(static_cast<long>(v)));
              }
            }
            const SdeInstance inst(f, d, std::move(coeffs));
            ++instances;
            const auto witness = brute_solve(inst);
            SeededRng rng(code);
            try {
              const Solution sol = solve(inst, Strategy::automatic, rng, no_fallback);
              ++solved;
              t.check(verify(inst, sol.x) && checks::solves(inst, sol.x), "unverified " + describe(inst, code));
              t.check(witness.has_value(), "solver found a solution the oracle rules out " + describe(inst, code));
            } catch (const InsufficientVariables&) {
              // Allowed: n below the active path's requirement.
            } catch (const std::exception& e) {
              t.fail(std::string("solve threw: ") + e.what() + " " + describe(inst, code));
            }
            if (witness) t.check(checks::solves(inst, witness->x), "oracle witness fails " + describe(inst, code));
          }
        }
      }
    }
  }
  return {t.failures() == 0, std::to_string(instances) + " instances, " + std::to_string(solved) + " solved by the main solver"};
}

Outcome degree_lift() {
  Tally t;
  SeededRng rng(7000);
  std::vector<mpz_class> qs{3, 5, 7, 11, 13, 1009, mpz_class("4294967291"),
                            mpz_class("340282366920938463463374607431768211297")};
  for (int k = 0; k < 3; ++k) qs.push_back(cli::random_prime(64, 6, rng));
  std::size_t pairs = 0;
  for (const auto& q : qs) {
    const PrimeField f(q);
    for (std::uint64_t d = 1; d <= 12; ++d) {
      ++pairs;
      const auto lift = lift_exponent(d, q);
      for (int i = 0; i < 100; ++i) {
        const auto x = f.random_nonzero(rng);
        mpz_class lhs, rhs;
        mpz_powm(lhs.get_mpz_t(), x.value().get_mpz_t(), lift.t.get_mpz_t(), q.get_mpz_t());
        mpz_powm_ui(lhs.get_mpz_t(), lhs.get_mpz_t(), d, q.get_mpz_t());
        mpz_powm_ui(rhs.get_mpz_t(), x.value().get_mpz_t(), lift.d_prime, q.get_mpz_t());
        t.check(lhs == rhs, "lift fails for d=" + std::to_string(d) + " q=" + q.get_str());
      }
    }
  }
  return {t.failures() == 0, std::to_string(pairs) + " (d, q) pairs x 100 elements"};
}

// A generator of F_q^* by trial, for small q with known factorization of q - 1.
FieldElement generator(const PrimeField& f, const std::vector<std::uint64_t>& primes) {
  for (long g = 2;; ++g) {
    const auto x = f.element(g);
    bool ok = true;
    for (const auto l : primes) ok = ok && !pow(x, mpz_class(f.order_minus_one() / l)).is_one();
    if (ok) return x;
  }
}

Outcome classifier() {
  Tally t;
  SeededRng rng(8000);
  struct FieldCase {
    const char* q;
    std::uint64_t d;
  };
  for (const FieldCase c : {FieldCase{"7", 3}, FieldCase{"13", 2}, FieldCase{"13", 4}, FieldCase{"257", 2},
                            FieldCase{"1009", 12}, FieldCase{"4294967291", 2},
                            FieldCase{"340282366920938463463374607431768211297", 2}}) {
    const PrimeField f = PrimeField::from_decimal(c.q);
    ClassifierState state(f, c.d);
    for (int i = 0; i < 1000; ++i) {
      const auto alpha = f.random_nonzero(rng);
      for (;;) {
        const auto res = state.classify(alpha);
        if (const auto* nu = std::get_if<NeedUpdate>(&res)) {
          const mpz_class before = state.eta_order();
          state.update(nu->gamma);
          t.check(state.eta_order() > before, "eta order did not grow");
          continue;
        }
        const auto& cl = std::get<Classification>(res);
        mpz_class check;
        mpz_powm_ui(check.get_mpz_t(), cl.beta.value().get_mpz_t(), c.d, f.modulus().get_mpz_t());
        check = check * state.zeta(cl.coset_index).value() % f.modulus();
        t.check(check == alpha.value(), "alpha != zeta_i beta^d over q=" + std::string(c.q));
        break;
      }
    }
    t.check(restarts_within_log2q(state.update_count(), f), "too many updates over q=" + std::string(c.q));
  }

  // Forced growth: feed elements of order l, l^2, ... inside the pi-part.
  struct Forced {
    unsigned long q;
    std::uint64_t d, l;
    unsigned e;
    std::vector<std::uint64_t> primes;
  };
  for (const Forced c : {Forced{257, 2, 2, 8, {2}}, Forced{163, 3, 3, 4, {2, 3}}, Forced{65537, 4, 2, 16, {2}}}) {
    const PrimeField f{mpz_class(c.q)};
    const auto g = generator(f, c.primes);
    ClassifierState state(f, c.d);
    mpz_class order = 1;
    std::size_t updates = 0;
    for (unsigned k = 1; k <= c.e; ++k) {
      mpz_class lk;
      mpz_ui_pow_ui(lk.get_mpz_t(), c.l, k);
      const auto elem = pow(g, mpz_class(f.order_minus_one() / lk));
      const auto res = state.classify(elem);
      if (const auto* nu = std::get_if<NeedUpdate>(&res)) {
        state.update(nu->gamma);
        ++updates;
        t.check(state.eta_order() > order, "eta order not strictly increasing");
        order = state.eta_order();
      } else {
        t.fail("element of order " + lk.get_str() + " classified without growth");
      }
    }
    t.check(updates == c.e && restarts_within_log2q(updates, f), "update count " + std::to_string(updates));
  }
  return {t.failures() == 0, std::to_string(t.checks()) + " checks"};
}

Outcome determinism() {
  Tally t;
  // bits = 0 selects q = 2^31 - 1, where d = 5 lifts to d' = 1 and d = 4 to d' = 2.
  struct Case {
    unsigned bits;
    std::uint64_t d, m;
    Strategy s;
  };
  const auto mersenne = std::make_shared<const PrimeField>(mpz_class(2147483647u));
  std::uint64_t seed = 9000;
  for (const Case c : {Case{32, 2, 3, Strategy::quadratic}, Case{128, 2, 5, Strategy::automatic},
                       Case{64, 3, 2, Strategy::cubic}, Case{32, 2, 2, Strategy::general},
                       Case{32, 3, 1, Strategy::general}, Case{0, 5, 4, Strategy::automatic},
                       Case{0, 4, 3, Strategy::automatic}}) {
    for (int k = 0; k < 3; ++k, ++seed) {
      SeededRng gen(seed);
      const auto f = c.bits == 0 ? mersenne : prime_field(c.bits, c.d, gen);
      const std::size_t n = cli::default_variable_count(c.s, c.d, f->modulus(), c.m);
      const auto inst = SdeInstance::random(f, c.d, c.m, n, gen);
      std::string runs[2];
      for (auto& out : runs) {
        SeededRng rng(seed * 31);
        try {
          out = cli::solution_to_json(solve(inst, c.s, rng), c.s, seed * 31).dump(2);
        } catch (const std::exception& e) {
          out = std::string("error: ") + e.what();
        }
      }
      t.check(runs[0] == runs[1] && runs[0].rfind("error", 0) != 0, "runs differ " + describe(inst, seed));

      SeededRng g1(seed), g2(seed);
      t.check(cli::serialize_instance(SdeInstance::random(f, c.d, c.m, 10, g1)) ==
                  cli::serialize_instance(SdeInstance::random(f, c.d, c.m, 10, g2)),
              "instance generation differs");
    }
  }
  return {t.failures() == 0, std::to_string(t.checks()) + " repeated runs compared byte for byte"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"quadratic path", quadratic_path},
      {"cubic path", cubic_path},
      {"general path", general_path},
      {"d-cube identity", dcube_identity},
      {"collisions and signed sum", collisions},
      {"oracle equivalence", oracle_equivalence},
      {"degree lift", degree_lift},
      {"classifier", classifier},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  const auto total = Clock::now();
  for (const auto& c : criteria) {
    ++index;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << c.name << ": " << o.detail << " ("
              << fmt(seconds_since(start)) << " s)" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << " in "
            << fmt(seconds_since(total)) << " s" << std::endl;
  return failed == 0 ? 0 : 1;
}
