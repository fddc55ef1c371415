#include "diageq/instance.hpp"

#include <string>

#include "diageq/error.hpp"

namespace diageq {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::general: return "general";
    case Strategy::quadratic: return "quadratic";
    case Strategy::cubic: return "cubic";
    case Strategy::linear: return "linear";
    case Strategy::oracle: return "oracle";
  }
  return "unknown";
}

std::string_view to_string(SolvePath p) {
  switch (p) {
    case SolvePath::zero_column: return "zero_column";
    case SolvePath::linear: return "linear";
    case SolvePath::quadratic: return "quadratic";
    case SolvePath::cubic: return "cubic";
    case SolvePath::general: return "general";
    case SolvePath::oracle: return "oracle";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  for (const Strategy s : {Strategy::automatic, Strategy::general, Strategy::quadratic,
                           Strategy::cubic, Strategy::linear, Strategy::oracle}) {
    if (text == to_string(s)) return s;
  }
  throw InvalidArgument("unknown strategy '" + std::string(text) + "'");
}

SdeInstance::SdeInstance(std::shared_ptr<const PrimeField> field, std::uint64_t d, FieldMatrix coeffs)
    : field_(std::move(field)), d_(d), coeffs_(std::move(coeffs)) {
  if (!field_) throw InvalidArgument("instance without a field");
  if (!field_->same_as(coeffs_.field())) throw InvalidArgument("coefficient matrix over another field");
  if (d_ == 0) throw InvalidArgument("degree must be at least 1");
  if (coeffs_.rows() == 0 || coeffs_.cols() == 0) {
    throw InvalidArgument("instance needs at least one equation and one variable");
  }
  columns_ = coeffs_.columns();
}

SdeInstance SdeInstance::random(std::shared_ptr<const PrimeField> field, std::uint64_t d,
                                std::size_t m, std::size_t n, SeededRng& rng) {
  FieldMatrix coeffs(*field, m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) coeffs.set(i, j, field->random(rng));
  }
  return SdeInstance(std::move(field), d, std::move(coeffs));
}

bool verify(const SdeInstance& instance, std::span<const FieldElement> x) {
  if (x.size() != instance.variables()) {
    throw InvalidArgument("verify: expected " + std::to_string(instance.variables()) +
                          " coordinates, got " + std::to_string(x.size()));
  }
  const PrimeField& field = instance.field();
  const mpz_class d = static_cast<unsigned long>(instance.degree());
  Vec powers;
  powers.reserve(x.size());
  bool nonzero = false;
  for (const auto& xj : x) {
    if (!field.same_as(xj.field())) return false;
    nonzero = nonzero || !xj.is_zero();
    powers.push_back(pow(xj, d));
  }
  if (!nonzero) return false;
  for (std::size_t i = 0; i < instance.equations(); ++i) {
    FieldElement sum = field.zero();
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!powers[j].is_zero()) sum += instance.coeffs().at(i, j) * powers[j];
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace diageq
