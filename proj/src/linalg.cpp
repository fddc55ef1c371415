#include "diageq/linalg.hpp"

#include <string>
#include <utility>

#include "diageq/error.hpp"
#include "diageq/kernels.hpp"

namespace diageq {

FieldMatrix::FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

FieldMatrix FieldMatrix::from_columns(const PrimeField& field, std::span<const Vec> columns) {
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  FieldMatrix out(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidArgument("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) out.set(r, c, columns[c][r]);
  }
  return out;
}

void FieldMatrix::set(std::size_t r, std::size_t c, FieldElement v) {
  if (!field_->same_as(v.field())) throw ArithmeticError("FieldMatrix::set: field mismatch");
  entries_.at(r * cols_ + c) = std::move(v);
}

Vec FieldMatrix::column(std::size_t c) const {
  Vec out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

std::vector<Vec> FieldMatrix::columns() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

namespace {

// Outcome of Gauss-Jordan stopped at the first free column.
template <typename T>
struct Reduced {
  std::size_t free_col = 0;
  std::vector<std::size_t> pivot_cols;  // pivot column of row k
  std::vector<T> free_entries;          // row k's entry in free_col
};

std::uint64_t inverse_u64(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 128-bit to avoid overflow for p < 2^64.
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a;
  while (new_r != 0) {
    const __int128 quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

Reduced<std::uint32_t> reduce_word32(std::vector<std::vector<std::uint32_t>> a, std::size_t width,
                                     std::uint32_t p) {
  const kernels::ModKernels& k = kernels::active_kernels();
  const std::size_t rows = a.size();
  Reduced<std::uint32_t> out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) {
      out.free_col = c;
      for (std::size_t r = 0; r < rank; ++r) out.free_entries.push_back(a[r][c]);
      return out;
    }
    std::swap(a[rank], a[piv]);
    auto pivot_row = std::span<std::uint32_t>(a[rank]).subspan(c, width - c);
    k.scale(pivot_row, static_cast<std::uint32_t>(inverse_u64(a[rank][c], p)), p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      k.axpy(std::span<std::uint32_t>(a[r]).subspan(c, width - c), pivot_row, p - a[r][c], p);
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  throw InvariantViolation("elimination found no free column");
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

Reduced<std::uint64_t> reduce_word64(std::vector<std::vector<std::uint64_t>> a, std::size_t width,
                                     std::uint64_t p) {
  const std::size_t rows = a.size();
  Reduced<std::uint64_t> out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) {
      out.free_col = c;
      for (std::size_t r = 0; r < rank; ++r) out.free_entries.push_back(a[r][c]);
      return out;
    }
    std::swap(a[rank], a[piv]);
    const std::uint64_t inv = inverse_u64(a[rank][c], p);
    for (std::size_t j = c; j < width; ++j) a[rank][j] = mulmod64(a[rank][j], inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t f = p - a[r][c];
      for (std::size_t j = c; j < width; ++j) {
        const std::uint64_t t = mulmod64(f, a[rank][j], p);
        const std::uint64_t s = a[r][j] + t;  // both < p < 2^64: detect wrap
        a[r][j] = (s < t || s >= p) ? s - p : s;
      }
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  throw InvariantViolation("elimination found no free column");
}

// Lazy reduction: non-pivot rows accumulate unreduced products and are only
// reduced where an entry is inspected (pivot search, elimination factor).
Reduced<mpz_class> reduce_generic(std::vector<std::vector<mpz_class>> a, std::size_t width,
                                  const mpz_class& p) {
  const std::size_t rows = a.size();
  const auto reduce = [&p](mpz_class& v) { mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()); };
  Reduced<mpz_class> out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width; ++c) {
    std::size_t piv = rank;
    for (; piv < rows; ++piv) {
      reduce(a[piv][c]);
      if (sgn(a[piv][c]) != 0) break;
    }
    if (piv == rows) {
      out.free_col = c;
      for (std::size_t r = 0; r < rank; ++r) {
        reduce(a[r][c]);
        out.free_entries.push_back(a[r][c]);
      }
      return out;
    }
    std::swap(a[rank], a[piv]);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a[rank][c].get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = c; j < width; ++j) {
      a[rank][j] *= inv;
      reduce(a[rank][j]);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      reduce(a[r][c]);
      if (sgn(a[r][c]) == 0) continue;
      const mpz_class f = a[r][c];
      for (std::size_t j = c + 1; j < width; ++j) {
        mpz_submul(a[r][j].get_mpz_t(), f.get_mpz_t(), a[rank][j].get_mpz_t());
      }
      a[r][c] = 0;
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  throw InvariantViolation("elimination found no free column");
}

template <typename T, typename Convert>
std::vector<std::vector<T>> gather(std::span<const Vec> vectors, std::size_t rows, std::size_t width,
                                   Convert convert) {
  std::vector<std::vector<T>> a(rows, std::vector<T>(width));
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < rows; ++r) a[r][c] = convert(vectors[c][r].value());
  }
  return a;
}

template <typename T, typename ToMpz>
Vec kernel_vector(const PrimeField& field, const Reduced<T>& red, std::size_t count, ToMpz to_mpz) {
  Vec alpha(count, field.zero());
  alpha[red.free_col] = field.one();
  for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
    alpha[red.pivot_cols[k]] = -field.element(to_mpz(red.free_entries[k]));
  }
  return alpha;
}

mpz_class from_u64(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

std::uint64_t to_u64(const mpz_class& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

}  // namespace

Vec nontrivial_dependency(const PrimeField& field, std::span<const Vec> vectors,
                          LinalgBackend backend) {
  if (vectors.empty()) throw InvalidArgument("nontrivial_dependency: no vectors");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InvalidArgument("nontrivial_dependency: ragged vectors");
    for (const auto& x : v) {
      if (!field.same_as(x.field())) throw ArithmeticError("nontrivial_dependency: field mismatch");
    }
  }
  if (vectors.size() <= dim) {
    throw InvalidArgument("nontrivial_dependency: need more than " + std::to_string(dim) +
                          " vectors, got " + std::to_string(vectors.size()));
  }
  // The first free column is among the first dim + 1.
  const std::size_t width = dim + 1;
  const std::size_t bits = field.bits();
  if (backend == LinalgBackend::automatic) {
    backend = bits <= 32 ? LinalgBackend::word32 : bits <= 64 ? LinalgBackend::word64
                                                              : LinalgBackend::generic;
  }

  Vec alpha = [&]() -> Vec {
    switch (backend) {
      case LinalgBackend::word32: {
        if (bits > 32) throw InvalidArgument("word32 backend needs q < 2^32");
        const auto p = static_cast<std::uint32_t>(to_u64(field.modulus()));
        auto a = gather<std::uint32_t>(vectors, dim, width, [](const mpz_class& v) {
          return static_cast<std::uint32_t>(to_u64(v));
        });
        return kernel_vector(field, reduce_word32(std::move(a), width, p), vectors.size(),
                             [](std::uint32_t v) { return from_u64(v); });
      }
      case LinalgBackend::word64: {
        if (bits > 64) throw InvalidArgument("word64 backend needs q < 2^64");
        const std::uint64_t p = to_u64(field.modulus());
        auto a = gather<std::uint64_t>(vectors, dim, width, to_u64);
        return kernel_vector(field, reduce_word64(std::move(a), width, p), vectors.size(), from_u64);
      }
      case LinalgBackend::generic:
      case LinalgBackend::automatic:
        break;
    }
    auto a = gather<mpz_class>(vectors, dim, width, [](const mpz_class& v) { return v; });
    return kernel_vector(field, reduce_generic(std::move(a), width, field.modulus()),
                         vectors.size(), [](const mpz_class& v) { return v; });
  }();

#ifndef NDEBUG
  if (!is_zero_vector(linear_combination(field, vectors, alpha))) {
    throw InvariantViolation("nontrivial_dependency: combination is not zero");
  }
#endif
  return alpha;
}

Vec linear_combination(const PrimeField& field, std::span<const Vec> vectors,
                       std::span<const FieldElement> coeffs) {
  if (vectors.size() != coeffs.size()) throw InvalidArgument("linear_combination: size mismatch");
  if (vectors.empty()) return {};
  const std::size_t dim = vectors.front().size();
  Vec out(dim, field.zero());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t r = 0; r < dim; ++r) out[r] += coeffs[i] * vectors[i][r];
  }
  return out;
}

bool is_zero_vector(std::span<const FieldElement> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

}  // namespace diageq
