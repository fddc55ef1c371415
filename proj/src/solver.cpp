#include "diageq/solver.hpp"

#include <chrono>
#include <optional>
#include <string>

#include "diageq/error.hpp"
#include "diageq/linalg.hpp"
#include "diageq/numth.hpp"
#include "diageq/oracle.hpp"

namespace diageq {

namespace {

mpz_class ui(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

std::size_t to_size(const mpz_class& v) {
  if (!mpz_fits_ulong_p(v.get_mpz_t())) {
    throw InsufficientVariables("required vector count " + v.get_str() + " exceeds addressable size",
                                v.get_str());
  }
  return v.get_ui();
}

// sum c^d v_index over a combination.
Vec evaluate(std::span<const Vec> vectors, const Combination& terms, std::uint64_t d,
             const PrimeField& field) {
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
  Vec out(dim, field.zero());
  const mpz_class dz = ui(d);
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    const FieldElement w = pow(t.coeff, dz);
    for (std::size_t r = 0; r < dim; ++r) out[r] += w * vectors[t.index][r];
  }
  return out;
}

// Terms of a level-1 family bucket: (offset + i, beta_i).
Combination bucket_terms(const DCubeFamily& f, std::size_t bucket, std::size_t offset) {
  Combination out;
  for (const std::size_t i : f.supports.at(bucket)) out.push_back({offset + i, *f.beta[i]});
  return out;
}

void append_scaled(Combination& out, const Combination& terms, const FieldElement& scale) {
  for (const auto& t : terms) {
    FieldElement c = scale * t.coeff;
    if (!c.is_zero()) out.push_back({t.index, std::move(c)});
  }
}

bool has_nonzero(const Combination& terms) {
  for (const auto& t : terms) {
    if (!t.coeff.is_zero()) return true;
  }
  return false;
}

using Attempt = std::variant<Combination, NeedUpdate>;

template <typename F>
ZeroCombination restart_loop(ClassifierState& state, F attempt) {
  // Each update at least doubles |<eta>| <= q - 1.
  const std::size_t limit = state.field().bits() - 1;
  for (std::size_t restarts = 0;; ++restarts) {
    Attempt res = attempt();
    if (auto* nu = std::get_if<NeedUpdate>(&res)) {
      if (restarts >= limit) {
        throw InvariantViolation("classifier restarts exceeded log2 q = " + std::to_string(limit));
      }
      state.update(nu->gamma);
      continue;
    }
    return {std::move(std::get<Combination>(res)), restarts};
  }
}

std::span<const Vec> prefix(std::span<const Vec> columns, const mpz_class& need) {
  const std::size_t n = to_size(need);
  if (columns.size() < n) {
    throw InsufficientVariables("need " + need.get_str() + " vectors, got " + std::to_string(columns.size()),
                                need.get_str());
  }
  return columns.first(n);
}

Attempt quadratic_attempt(std::span<const Vec> columns, const ClassifierState& state, SeededRng& rng) {
  const PrimeField& field = state.field();
  const std::size_t m = columns.front().size();
  const std::size_t group = m + 1;

  // Level 1: each group k gives w_1(k) + zeta w_2(k) = 0 with u_k = w_2(k).
  std::vector<DCubeFamily> parts;
  std::vector<Vec> u;
  for (std::size_t k = 0; k < group; ++k) {
    auto res = dcube(columns.subspan(k * group, group), 1, state);
    if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
    auto& f = std::get<DCubeFamily>(res);
    if (f.supports[1].empty()) return bucket_terms(f, 0, k * group);
    if (is_zero_vector(f.w[1])) return bucket_terms(f, 1, k * group);
    u.push_back(f.w[1]);
    parts.push_back(std::move(f));
  }

  auto res = dcube(u, 1, state);
  if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
  const auto& top = std::get<DCubeFamily>(res);

  // rep(K, b): sum over k in bucket K of the level-1 bucket b of group k.
  const auto rep = [&](std::size_t outer, std::size_t inner, const FieldElement& scale) {
    Combination out;
    for (const std::size_t k : top.supports[outer]) {
      append_scaled(out, bucket_terms(parts[k], inner, k * group), scale * *top.beta[k]);
    }
    return out;
  };
  if (top.supports[1].empty()) return rep(0, 1, field.one());

  // With A = rep(0,1): rep(0,0) = -zeta A, rep(1,1) = -A/zeta, rep(1,0) = A.
  // zeta^2 y^2 - 2 zeta x^2 + z^2 = 0 makes y^2 rep(0,0) + x^2 (rep(0,1) + rep(1,0)) + z^2 rep(1,1) vanish.
  const FieldElement& zeta = state.zeta(2);
  const Vec a{zeta * zeta, -(zeta + zeta), field.one()};
  const Vec yxz = single_diagonal_solve(a, 2, rng);
  Combination out = rep(0, 0, yxz[0]);
  for (auto&& part : {rep(0, 1, yxz[1]), rep(1, 0, yxz[1]), rep(1, 1, yxz[2])}) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Attempt cubic_attempt(std::span<const Vec> columns, const ClassifierState& state) {
  auto res = collide(columns, state, GroupSizing::tight);
  if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
  auto& c = std::get<Collision>(res);
  Combination out = std::move(c.I);
  for (auto& t : c.J) out.push_back({t.index, -t.coeff});
  return out;
}

Attempt general_attempt(std::span<const Vec> columns, const ClassifierState& state, SeededRng& rng) {
  auto res = accumulate(columns, state);
  if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
  if (auto* ez = std::get_if<EarlyZero>(&res)) return std::move(ez->terms);
  const auto& mr = std::get<MultiRep>(res);
  const std::uint64_t d = state.degree();
  const PrimeField& field = state.field();
  const Vec ones(d + 1, field.one());
  const Vec z = single_diagonal_solve(ones, d, rng);
  Combination out;
  for (std::size_t i = 0; i <= d; ++i) {
    if (!z[i].is_zero()) append_scaled(out, mr.reps.at(i), z[i]);
  }
  return out;
}

void check_zero(std::span<const Vec> columns, const Combination& terms, std::uint64_t d,
                const PrimeField& field, const char* path) {
  if (!has_nonzero(terms) || !is_zero_vector(evaluate(columns, terms, d, field))) {
    throw InvariantViolation(std::string(path) + " path produced an invalid zero combination");
  }
}

}  // namespace

mpz_class required_input_count(std::uint64_t d, std::uint64_t m) {
  if (d == 0) throw InvalidArgument("degree must be at least 1");
  if (d == 1) return ui(m + 1);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), collision_count(d, m).get_mpz_t(), ceil_log2(d + 1));
  return out;
}

mpz_class required_count(Strategy strategy, std::uint64_t d, std::uint64_t m) {
  if (d == 0) throw InvalidArgument("degree must be at least 1");
  switch (strategy) {
    case Strategy::linear:
      return ui(m + 1);
    case Strategy::quadratic:
      return ui(m + 1) * ui(m + 1);
    case Strategy::cubic:
      return collision_count(3, m, GroupSizing::tight);
    case Strategy::general:
      return required_input_count(d, m);
    case Strategy::oracle:
      return ui(d) * ui(m) + 1;
    case Strategy::automatic:
      if (d == 1) return ui(m + 1);
      if (d == 2) return ui(m + 1) * ui(m + 1);
      if (d == 3) return collision_count(3, m, GroupSizing::tight);
      return required_input_count(d, m);
  }
  throw InvalidArgument("unknown strategy");
}

Vec single_diagonal_solve(std::span<const FieldElement> a, std::uint64_t d, SeededRng& rng) {
  if (d == 0 || a.size() != d + 1) {
    throw InvalidArgument("single_diagonal_solve: expected d + 1 coefficients");
  }
  const PrimeField& field = a.front().field();
  for (const auto& c : a) {
    if (c.is_zero()) throw InvalidArgument("single_diagonal_solve: zero coefficient");
  }
  Vec x(d + 1, field.zero());
  const mpz_class dz = ui(d);

  if (d % 2 == 1) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        if (a[i] == a[j]) {
          x[i] = field.one();
          x[j] = -field.one();
          return x;
        }
      }
    }
  }

  const FieldElement neg_inv = -a[0].inverse();
  for (std::uint64_t attempt = 0; attempt < 64 * d; ++attempt) {
    FieldElement rest = field.zero();
    bool tail_nonzero = false;
    for (std::size_t i = 1; i <= d; ++i) {
      x[i] = field.random(rng);
      tail_nonzero = tail_nonzero || !x[i].is_zero();
      rest += a[i] * pow(x[i], dz);
    }
    const FieldElement s = rest * neg_inv;
    if (s.is_zero()) {
      if (!tail_nonzero) continue;
      x[0] = field.zero();
      return x;
    }
    if (auto r = dth_root(s, d, rng)) {
      x[0] = *r;
      return x;
    }
  }
  throw BudgetExhausted("single_diagonal_solve: no solution after " + std::to_string(64 * d) +
                        " attempts");
}

AccumulateResult accumulate(std::span<const Vec> vectors, const ClassifierState& state) {
  const std::uint64_t d = state.degree();
  if (d < 2) throw InvalidArgument("accumulate: degree must be at least 2");
  if (vectors.empty()) throw InvalidArgument("accumulate: no input vectors");
  const PrimeField& field = state.field();
  const std::size_t m = vectors.front().size();
  const std::size_t G = to_size(collision_count(d, m));
  const unsigned L = ceil_log2(d + 1);
  const mpz_class need = required_input_count(d, m);
  if (mpz_cmp_ui(need.get_mpz_t(), vectors.size()) != 0) {
    throw InvalidArgument("accumulate: expected " + need.get_str() + " vectors, got " +
                          std::to_string(vectors.size()));
  }

  struct Node {
    Vec target;
    std::vector<Combination> reps;
  };
  std::vector<Node> nodes;
  const std::size_t first = vectors.size() / G;
  nodes.reserve(first);
  for (std::size_t k = 0; k < first; ++k) {
    auto res = collide(vectors.subspan(k * G, G), state);
    if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
    auto& c = std::get<Collision>(res);
    for (auto& t : c.I) t.index += k * G;
    for (auto& t : c.J) t.index += k * G;
    Vec target = evaluate(vectors, c.I, d, field);
    if (c.J.empty() || is_zero_vector(target)) return EarlyZero{std::move(c.I)};
    nodes.push_back({std::move(target), {std::move(c.I), std::move(c.J)}});
  }

  for (unsigned level = 2; level <= L; ++level) {
    std::vector<Node> next;
    for (std::size_t g = 0; g < nodes.size() / G; ++g) {
      std::vector<Vec> targets;
      targets.reserve(G);
      for (std::size_t k = 0; k < G; ++k) targets.push_back(nodes[g * G + k].target);
      auto res = collide(targets, state);
      if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
      const auto& c = std::get<Collision>(res);

      const auto compose = [&](const Combination& outer, std::size_t x) {
        Combination out;
        for (const auto& t : outer) append_scaled(out, nodes[g * G + t.index].reps[x], t.coeff);
        return out;
      };
      Vec target = evaluate(targets, c.I, d, field);
      if (c.J.empty() || is_zero_vector(target)) return EarlyZero{compose(c.I, 0)};

      const std::size_t count = nodes[g * G].reps.size();
      Node node{std::move(target), {}};
      for (std::size_t x = 0; x < count; ++x) node.reps.push_back(compose(c.I, x));
      for (std::size_t x = 0; x < count; ++x) node.reps.push_back(compose(c.J, x));
      next.push_back(std::move(node));
    }
    nodes = std::move(next);
  }
  if (nodes.size() != 1) throw InvariantViolation("accumulate: expected a single root");
  return MultiRep{std::move(nodes[0].target), std::move(nodes[0].reps), L};
}

ZeroCombination solve_quadratic(std::span<const Vec> columns, ClassifierState& state, SeededRng& rng) {
  if (state.degree() != 2) throw InvalidArgument("solve_quadratic: degree must be 2");
  if (columns.empty()) throw InvalidArgument("solve_quadratic: no columns");
  const std::size_t m = columns.front().size();
  const auto cols = prefix(columns, required_count(Strategy::quadratic, 2, m));
  auto out = restart_loop(state, [&] { return quadratic_attempt(cols, state, rng); });
  check_zero(cols, out.terms, 2, state.field(), "quadratic");
  return out;
}

ZeroCombination solve_cubic(std::span<const Vec> columns, ClassifierState& state) {
  if (state.degree() != 3) throw InvalidArgument("solve_cubic: degree must be 3");
  if (columns.empty()) throw InvalidArgument("solve_cubic: no columns");
  const std::size_t m = columns.front().size();
  const auto cols = prefix(columns, required_count(Strategy::cubic, 3, m));
  auto out = restart_loop(state, [&] { return cubic_attempt(cols, state); });
  check_zero(cols, out.terms, 3, state.field(), "cubic");
  return out;
}

ZeroCombination solve_general(std::span<const Vec> columns, ClassifierState& state, SeededRng& rng) {
  const std::uint64_t d = state.degree();
  if (columns.empty()) throw InvalidArgument("solve_general: no columns");
  const std::size_t m = columns.front().size();
  const auto cols = prefix(columns, required_input_count(d, m));
  auto out = restart_loop(state, [&] { return general_attempt(cols, state, rng); });
  check_zero(cols, out.terms, d, state.field(), "general");
  return out;
}

Solution solve(const SdeInstance& instance, Strategy strategy, SeededRng& rng,
               const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const PrimeField& field = instance.field();
  const std::size_t n = instance.variables();
  const std::size_t m = instance.equations();
  const auto& columns = instance.columns();

  const auto finish = [&](Solution sol) {
    if (!verify(instance, sol.x)) {
      throw InvariantViolation(std::string("solution from the ") + std::string(to_string(sol.stats.path)) +
                               " path does not verify");
    }
    sol.stats.elapsed = std::chrono::steady_clock::now() - start;
    return sol;
  };
  const auto run_oracle = [&] {
    auto sol = brute_solve(instance, options.cap);
    if (!sol) throw StrategyUnavailable("oracle: the system has only the zero solution");
    return finish(std::move(*sol));
  };

  if (strategy == Strategy::oracle) {
    if (!oracle_applicable(instance, options.cap)) {
      throw StrategyUnavailable("oracle: q^n exceeds the cap " + std::to_string(options.cap));
    }
    return run_oracle();
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (is_zero_vector(columns[j])) {
      Solution sol;
      sol.x.assign(n, field.zero());
      sol.x[j] = field.one();
      sol.stats.path = SolvePath::zero_column;
      sol.stats.vectors_used = 1;
      return finish(std::move(sol));
    }
  }

  const LiftedExponent lift = lift_exponent(instance.degree(), field.modulus());
  const std::uint64_t dp = lift.d_prime;

  SolvePath path = SolvePath::general;
  if (dp == 1) {
    path = SolvePath::linear;
  } else {
    const auto unavailable = [&](const char* name, int want) {
      return StrategyUnavailable(std::string(name) + " strategy needs gcd(d, q - 1) = " +
                                 std::to_string(want) + ", got " + std::to_string(dp));
    };
    switch (strategy) {
      case Strategy::automatic:
        path = dp == 2 ? SolvePath::quadratic : dp == 3 ? SolvePath::cubic : SolvePath::general;
        break;
      case Strategy::quadratic:
        if (dp != 2) throw unavailable("quadratic", 2);
        path = SolvePath::quadratic;
        break;
      case Strategy::cubic:
        if (dp != 3) throw unavailable("cubic", 3);
        path = SolvePath::cubic;
        break;
      case Strategy::general:
        path = SolvePath::general;
        break;
      case Strategy::linear:
        throw StrategyUnavailable("linear strategy needs gcd(d, q - 1) = 1, got " + std::to_string(dp));
      case Strategy::oracle:
        break;
    }
  }

  const Strategy as_strategy = path == SolvePath::linear      ? Strategy::linear
                               : path == SolvePath::quadratic ? Strategy::quadratic
                               : path == SolvePath::cubic     ? Strategy::cubic
                                                              : Strategy::general;
  const mpz_class need = required_count(as_strategy, dp, m);
  if (mpz_cmp_ui(need.get_mpz_t(), n) > 0) {
    if (strategy == Strategy::automatic && options.oracle_fallback &&
        oracle_applicable(instance, options.cap)) {
      return run_oracle();
    }
    throw InsufficientVariables("the " + std::string(to_string(path)) + " path needs n >= " +
                                    need.get_str() + ", got n = " + std::to_string(n),
                                need.get_str());
  }

  ZeroCombination zero;
  if (path == SolvePath::linear) {
    const std::span<const Vec> cols(columns.data(), m + 1);
    const Vec alpha = nontrivial_dependency(field, cols);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (!alpha[j].is_zero()) zero.terms.push_back({j, alpha[j]});
    }
    check_zero(cols, zero.terms, 1, field, "linear");
  } else {
    ClassifierState state(field, dp);
    if (path == SolvePath::quadratic) {
      zero = solve_quadratic(columns, state, rng);
    } else if (path == SolvePath::cubic) {
      zero = solve_cubic(columns, state);
    } else {
      zero = solve_general(columns, state, rng);
    }
  }

  Solution sol;
  sol.x.assign(n, field.zero());
  for (const auto& t : zero.terms) sol.x.at(t.index) = pow(t.coeff, lift.t);
  sol.stats.restarts = zero.restarts;
  sol.stats.path = path;
  sol.stats.vectors_used = need.get_ui();
  return finish(std::move(sol));
}

}  // namespace diageq
