#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diageq/field.hpp"

namespace diageq {

/// Dense row-major matrix over one prime field.
class FieldMatrix {
 public:
  FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);

  /// Column j of the result is columns[j]; all columns must have equal length.
  static FieldMatrix from_columns(const PrimeField& field, std::span<const Vec> columns);

  const PrimeField& field() const noexcept { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const FieldElement& at(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  void set(std::size_t r, std::size_t c, FieldElement v);

  Vec column(std::size_t c) const;
  std::vector<Vec> columns() const;

  bool operator==(const FieldMatrix& other) const {
    return field_->same_as(*other.field_) && rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
  }

 private:
  const PrimeField* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

/// Arithmetic backend for elimination. `automatic` picks the narrowest one
/// that fits q; all backends return identical coefficients.
enum class LinalgBackend { automatic, generic, word64, word32 };

/// Coefficients alpha (one per vector, not all zero) with sum alpha_i v_i = 0.
///
/// Gauss-Jordan over the columns in index order with the first nonzero entry
/// as pivot; the kernel vector of the first free column is returned, scaled so
/// that column's coefficient is 1. Requires vectors.size() > dimension.
Vec nontrivial_dependency(const PrimeField& field, std::span<const Vec> vectors,
                          LinalgBackend backend = LinalgBackend::automatic);

/// sum c_i * v_i.
Vec linear_combination(const PrimeField& field, std::span<const Vec> vectors,
                       std::span<const FieldElement> coeffs);

bool is_zero_vector(std::span<const FieldElement> v);

}  // namespace diageq
