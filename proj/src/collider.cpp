#include "diageq/collider.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "diageq/error.hpp"
#include "diageq/linalg.hpp"

namespace diageq {

// ---------------------------------------------------------------------------
// TupleKey

TupleKey TupleKey::from_rank(std::size_t rank, std::uint64_t d, std::size_t length) {
  std::vector<std::uint32_t> e(length);
  for (std::size_t j = length; j-- > 0;) {
    e[j] = static_cast<std::uint32_t>(rank % d + 1);
    rank /= d;
  }
  if (rank != 0) throw InvalidArgument("TupleKey::from_rank: rank out of range");
  return TupleKey(std::move(e));
}

TupleKey TupleKey::identity(std::size_t length) {
  std::vector<std::uint32_t> e(length);
  std::iota(e.begin(), e.end(), 1u);
  return TupleKey(std::move(e));
}

std::size_t TupleKey::rank(std::uint64_t d) const {
  std::size_t r = 0;
  for (const auto a : entries_) {
    if (a < 1 || a > d) throw InvalidArgument("TupleKey: entry " + std::to_string(a) + " outside [1, d]");
    r = r * d + (a - 1);
  }
  return r;
}

TupleKey TupleKey::with(std::size_t j, std::uint32_t s) const {
  TupleKey out = *this;
  out.entries_.at(j) = s;
  return out;
}

TupleKey TupleKey::extended(std::uint32_t s) const {
  TupleKey out = *this;
  out.entries_.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Counts

namespace {

mpz_class ui(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// Number of groups combined at the step from `level` to `level + 1`.
mpz_class group_count(std::uint64_t d, std::uint64_t m, unsigned level, GroupSizing sizing) {
  mpz_class dl;
  mpz_ui_pow_ui(dl.get_mpz_t(), d, level);
  return sizing == GroupSizing::dcube ? mpz_class(dl * ui(m + 1)) : mpz_class(dl * ui(m) + 1);
}

std::size_t to_size(const mpz_class& v, const char* what) {
  if (!mpz_fits_ulong_p(v.get_mpz_t())) {
    throw InvalidArgument(std::string(what) + " " + v.get_str() + " exceeds addressable size");
  }
  return v.get_ui();
}

std::size_t ipow(std::uint64_t d, unsigned e) {
  std::size_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= d;
  return r;
}

}  // namespace

mpz_class required_vectors(std::uint64_t d, std::uint64_t m, unsigned level, GroupSizing sizing) {
  if (d == 0 || level < 1 || level > d) {
    throw InvalidArgument("required_vectors: level " + std::to_string(level) + " outside [1, " +
                          std::to_string(d) + "]");
  }
  mpz_class b = ui(m + 1);
  for (unsigned l = 1; l < level; ++l) b *= group_count(d, m, l, sizing);
  return b;
}

mpz_class collision_count(std::uint64_t d, std::uint64_t m, GroupSizing sizing) {
  return required_vectors(d, m, static_cast<unsigned>(d), sizing);
}

// ---------------------------------------------------------------------------
// d-cube recursion

namespace {

struct Bucketed {
  std::size_t index;  // 1-based coset index
  FieldElement coeff;
};

using BucketResult = std::variant<std::vector<std::optional<Bucketed>>, NeedUpdate>;

// Classifies every nonzero coefficient. If bucket `target` ends up empty, all
// coefficients are multiplied by zeta_target / zeta_r (r the smallest occupied
// bucket) and classified again, which moves bucket r into `target`.
BucketResult bucket_coefficients(const Vec& alpha, std::size_t target, const ClassifierState& state) {
  const auto run = [&](const Vec& coeffs, std::optional<std::size_t> preferred) -> BucketResult {
    std::vector<std::optional<Bucketed>> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      auto res = state.classify(coeffs[i], preferred);
      if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
      auto& c = std::get<Classification>(res);
      out[i] = Bucketed{c.coset_index, std::move(c.beta)};
    }
    return out;
  };

  BucketResult first = run(alpha, std::nullopt);
  if (std::holds_alternative<NeedUpdate>(first)) return first;
  const auto& buckets = std::get<0>(first);
  std::size_t smallest = 0;
  for (const auto& b : buckets) {
    if (!b) continue;
    if (b->index == target) return first;
    if (smallest == 0 || b->index < smallest) smallest = b->index;
  }
  if (smallest == 0) throw InvariantViolation("dependency with all coefficients zero");

  const FieldElement shift = state.zeta(target) * state.zeta(smallest).inverse();
  Vec rotated;
  rotated.reserve(alpha.size());
  for (const auto& a : alpha) rotated.push_back(a * shift);
  BucketResult second = run(rotated, target);
  if (std::holds_alternative<NeedUpdate>(second)) return second;
  for (const auto& b : std::get<0>(second)) {
    if (b && b->index == target) return second;
  }
  throw InvariantViolation("bucket rotation left the target bucket empty");
}

DCubeFamily empty_family(unsigned level, const ClassifierState& state, std::size_t dimension,
                         std::size_t inputs) {
  DCubeFamily f;
  f.level = level;
  f.d = state.degree();
  f.dimension = dimension;
  const std::size_t tuples = ipow(f.d, level);
  f.supports.assign(tuples, {});
  f.w.assign(tuples, Vec(dimension, state.field().zero()));
  f.beta.assign(inputs, std::nullopt);
  f.zetas = state.zetas();
  return f;
}

DCubeResult dcube_impl(std::span<const Vec> vectors, unsigned level, const ClassifierState& state,
                       GroupSizing sizing, std::size_t m) {
  const PrimeField& field = state.field();
  const std::uint64_t d = state.degree();
  const mpz_class dz = ui(d);

  if (level == 1) {
    const Vec alpha = nontrivial_dependency(field, vectors);
    auto res = bucket_coefficients(alpha, 1, state);
    if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
    const auto& buckets = std::get<0>(res);
    DCubeFamily f = empty_family(1, state, m, vectors.size());
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      if (!buckets[i]) continue;
      const std::size_t r = buckets[i]->index - 1;
      const FieldElement weight = pow(buckets[i]->coeff, dz);
      f.supports[r].push_back(i);
      f.beta[i] = buckets[i]->coeff;
      for (std::size_t row = 0; row < m; ++row) f.w[r][row] += weight * vectors[i][row];
    }
    return f;
  }

  const std::size_t group = to_size(required_vectors(d, m, level - 1, sizing), "group size");
  const std::size_t groups = to_size(group_count(d, m, level - 1, sizing), "group count");
  std::vector<DCubeFamily> parts;
  parts.reserve(groups);
  for (std::size_t k = 0; k < groups; ++k) {
    auto res = dcube_impl(vectors.subspan(k * group, group), level - 1, state, sizing, m);
    if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
    parts.push_back(std::move(std::get<DCubeFamily>(res)));
  }

  // W(k): concatenation of w_a(k) over a in lexicographic order.
  const std::size_t prev_tuples = ipow(d, level - 1);
  std::vector<Vec> stacked;
  stacked.reserve(groups);
  for (const auto& part : parts) {
    Vec big;
    big.reserve(prev_tuples * m);
    for (const auto& w : part.w) big.insert(big.end(), w.begin(), w.end());
    stacked.push_back(std::move(big));
  }
  const Vec alpha = nontrivial_dependency(field, stacked);
  auto res = bucket_coefficients(alpha, level, state);
  if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
  const auto& buckets = std::get<0>(res);

  // Fuse: J'_(a, s) = union over k in M_s of J_a(k), beta'_(k,i) = gamma(k) beta_i(k).
  DCubeFamily f = empty_family(level, state, m, vectors.size());
  for (std::size_t k = 0; k < groups; ++k) {
    if (!buckets[k]) continue;
    const std::size_t s = buckets[k]->index;
    const FieldElement& gamma = buckets[k]->coeff;
    const FieldElement weight = pow(gamma, dz);
    const DCubeFamily& part = parts[k];
    for (std::size_t a = 0; a < prev_tuples; ++a) {
      const std::size_t fused = a * d + (s - 1);
      for (const std::size_t i : part.supports[a]) {
        const std::size_t global = k * group + i;
        f.supports[fused].push_back(global);
        f.beta[global] = gamma * *part.beta[i];
      }
      for (std::size_t row = 0; row < m; ++row) f.w[fused][row] += weight * part.w[a][row];
    }
  }
  return f;
}

}  // namespace

DCubeResult dcube(std::span<const Vec> vectors, unsigned level, const ClassifierState& state,
                  GroupSizing sizing) {
  const std::uint64_t d = state.degree();
  if (vectors.empty()) throw InvalidArgument("dcube: no input vectors");
  if (!mpz_divisible_ui_p(state.field().order_minus_one().get_mpz_t(), d)) {
    throw InvalidArgument("dcube: d = " + std::to_string(d) + " does not divide q - 1");
  }
  const std::size_t m = vectors.front().size();
  const mpz_class need = required_vectors(d, m, level, sizing);
  if (mpz_cmp_ui(need.get_mpz_t(), vectors.size()) != 0) {
    throw InvalidArgument("dcube: expected " + need.get_str() + " vectors, got " +
                          std::to_string(vectors.size()));
  }
  for (const auto& v : vectors) {
    if (v.size() != m) throw InvalidArgument("dcube: ragged input vectors");
  }
  return dcube_impl(vectors, level, state, sizing, m);
}

// ---------------------------------------------------------------------------
// Collisions

std::vector<TupleKey> permutations(std::size_t d) {
  std::vector<std::uint32_t> e(d);
  std::iota(e.begin(), e.end(), 1u);
  std::vector<TupleKey> out;
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

int perm_sign(const TupleKey& a) {
  const std::size_t d = a.length();
  std::vector<bool> seen(d + 1, false);
  for (const auto x : a.entries()) {
    if (x < 1 || x > d || seen[x]) throw InvalidArgument("perm_sign: not a permutation of 1..d");
    seen[x] = true;
  }
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (a[i] > a[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Collision collision_from_family(const DCubeFamily& family) {
  if (family.level != family.d) {
    throw InvalidArgument("collision_from_family: family level must equal d");
  }
  Collision c;
  for (const auto& perm : permutations(family.d)) {
    Combination& side = perm_sign(perm) > 0 ? c.I : c.J;
    for (const std::size_t i : family.support(perm)) side.push_back({i, *family.beta[i]});
  }
  const auto by_index = [](const Term& x, const Term& y) { return x.index < y.index; };
  std::sort(c.I.begin(), c.I.end(), by_index);
  std::sort(c.J.begin(), c.J.end(), by_index);
  if (c.I.empty()) std::swap(c.I, c.J);
  return c;
}

CollideResult collide(std::span<const Vec> vectors, const ClassifierState& state, GroupSizing sizing) {
  auto res = dcube(vectors, static_cast<unsigned>(state.degree()), state, sizing);
  if (auto* nu = std::get_if<NeedUpdate>(&res)) return *nu;
  return collision_from_family(std::get<DCubeFamily>(res));
}

}  // namespace diageq
