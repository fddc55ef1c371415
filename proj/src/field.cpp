#include "diageq/field.hpp"

#include <cctype>
#include <string>

#include "diageq/error.hpp"
#include "diageq/numth.hpp"

namespace diageq {

namespace {

constexpr int kPrimalityRounds = 64;

mpz_class reduce(const mpz_class& v, const mpz_class& q) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
  return r;
}

mpz_class ui(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// Root of a, a known prime^exponent-th power, for prime^exponent | q-1.
FieldElement root_prime_power(const FieldElement& a, std::uint64_t prime, unsigned exponent,
                              SeededRng& rng) {
  const PrimeField& f = a.field();
  const mpz_class& qm1 = f.order_minus_one();
  mpz_class power = 1;
  for (unsigned i = 0; i < exponent; ++i) power *= ui(prime);

  // q - 1 = prime^s * t with t coprime to prime.
  unsigned s = 0;
  mpz_class t = qm1;
  while (mpz_divisible_ui_p(t.get_mpz_t(), prime)) {
    t /= ui(prime);
    ++s;
  }

  // x0^power = a * err with err in the Sylow subgroup S of order prime^s.
  const mpz_class k = inverse_mod(power % t, t);
  const FieldElement x0 = pow(a, k);
  const FieldElement err = pow(x0, power) * a.inverse();
  if (err.is_one()) return x0;

  const FieldElement z = sample_nonresidue(f, prime, rng);
  const FieldElement g = pow(z, t);  // generates S
  const auto log_err = dlog_prime_power(g, prime, s, err);
  if (!log_err) {
    throw InvariantViolation("root extraction: Sylow error term outside the Sylow subgroup");
  }
  // err is a power-th power inside cyclic S, so power divides its logarithm.
  if (!mpz_divisible_p(log_err->get_mpz_t(), power.get_mpz_t())) {
    throw InvariantViolation("root extraction: input is not a prime-power residue");
  }
  const mpz_class shift = *log_err / power;
  return x0 * pow(g, mpz_class(-shift));
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimeField

PrimeField::PrimeField(mpz_class q) : q_(std::move(q)) {
  if (q_ < 2) throw InvalidArgument("modulus must be at least 2, got " + q_.get_str());
  if (mpz_probab_prime_p(q_.get_mpz_t(), kPrimalityRounds) == 0) {
    throw InvalidArgument("modulus " + q_.get_str() + " is not prime");
  }
  q_minus_1_ = q_ - 1;
}

PrimeField PrimeField::from_decimal(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty modulus");
  for (const char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("modulus is not a decimal integer: '" + std::string(text) + "'");
    }
  }
  return PrimeField(mpz_class(std::string(text), 10));
}

FieldElement PrimeField::element(const mpz_class& value) const {
  return FieldElement(*this, reduce(value, q_));
}

FieldElement PrimeField::element(long value) const { return element(mpz_class(value)); }

FieldElement PrimeField::zero() const { return FieldElement(*this, mpz_class(0)); }

FieldElement PrimeField::one() const { return FieldElement(*this, mpz_class(1)); }

FieldElement PrimeField::random(SeededRng& rng) const {
  return FieldElement(*this, rng.uniform_below(q_));
}

FieldElement PrimeField::random_nonzero(SeededRng& rng) const {
  return FieldElement(*this, rng.uniform_below(q_minus_1_) + 1);
}

// ---------------------------------------------------------------------------
// FieldElement

void FieldElement::check_same_field(const FieldElement& rhs) const {
  if (!field_->same_as(*rhs.field_)) {
    throw ArithmeticError("field mismatch: F_" + field_->modulus().get_str() + " vs F_" +
                          rhs.field_->modulus().get_str());
  }
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  check_same_field(rhs);
  mpz_class r = value_ + rhs.value_;
  if (r >= field_->modulus()) r -= field_->modulus();
  return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  check_same_field(rhs);
  mpz_class r = value_ - rhs.value_;
  if (sgn(r) < 0) r += field_->modulus();
  return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  check_same_field(rhs);
  mpz_class r = value_ * rhs.value_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), field_->modulus().get_mpz_t());
  return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  check_same_field(rhs);
  return *this * rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  if (is_zero()) return *this;
  return FieldElement(*field_, field_->modulus() - value_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), field_->modulus().get_mpz_t());
  return FieldElement(*field_, std::move(r));
}

// ---------------------------------------------------------------------------
// Free functions

FieldElement pow(const FieldElement& a, const mpz_class& e) {
  const PrimeField& f = a.field();
  if (sgn(e) < 0) {
    if (a.is_zero()) throw ArithmeticError("negative power of zero");
    return pow(a.inverse(), mpz_class(-e));
  }
  mpz_class r;
  mpz_powm(r.get_mpz_t(), a.value().get_mpz_t(), e.get_mpz_t(), f.modulus().get_mpz_t());
  return FieldElement(f, std::move(r));
}

FieldElement pow(const FieldElement& a, long e) { return pow(a, mpz_class(e)); }

std::optional<FieldElement> sqrt(const FieldElement& a, const FieldElement& nonresidue) {
  const PrimeField& f = a.field();
  if (!f.is_odd()) throw InvalidArgument("sqrt: field characteristic must be odd");
  const mpz_class half = f.order_minus_one() / 2;
  if (!(pow(nonresidue, half) == -f.one())) {
    throw InvalidArgument("sqrt: supplied element " + nonresidue.to_string() +
                          " is not a quadratic nonresidue");
  }
  if (a.is_zero()) return a;
  if (!pow(a, half).is_one()) return std::nullopt;

  // q - 1 = 2^s * t, t odd.
  unsigned s = 0;
  mpz_class t = f.order_minus_one();
  while (mpz_even_p(t.get_mpz_t())) {
    t >>= 1;
    ++s;
  }
  FieldElement c = pow(nonresidue, t);
  FieldElement x = pow(a, mpz_class((t + 1) / 2));
  FieldElement b = pow(a, t);
  unsigned m = s;
  while (!b.is_one()) {
    // Least i with b^(2^i) = 1.
    unsigned i = 0;
    FieldElement probe = b;
    while (!probe.is_one()) {
      probe = probe * probe;
      ++i;
    }
    FieldElement step = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) step = step * step;
    x = x * step;
    c = step * step;
    b = b * c;
    m = i;
  }
  if (!(x * x == a)) throw InvariantViolation("sqrt: Tonelli-Shanks produced a non-root");
  return x;
}

std::optional<FieldElement> dth_root(const FieldElement& a, std::uint64_t d, SeededRng& rng) {
  if (d == 0) throw InvalidArgument("dth_root: d must be at least 1");
  if (a.is_zero()) return a;
  const PrimeField& f = a.field();
  const LiftedExponent lift = lift_exponent(d, f.modulus());
  const std::uint64_t g = lift.d_prime;
  if (!pow(a, mpz_class(f.order_minus_one() / ui(g))).is_one()) return std::nullopt;

  // x^g = a assembled from per-prime-power roots: with g_i = l_i^e_i and
  // sum c_i * (g / g_i) = 1, x = prod r_i^c_i where r_i^g_i = a.
  FieldElement x = a;
  if (g > 1) {
    const DegreeProfile profile = factor_degree(g);
    x = f.one();
    std::vector<std::pair<FieldElement, mpz_class>> parts;
    for (const auto& pp : profile.factors) {
      mpz_class gi = 1;
      for (unsigned i = 0; i < pp.exponent; ++i) gi *= ui(pp.prime);
      const FieldElement ri = root_prime_power(a, pp.prime, pp.exponent, rng);
      if (!(pow(ri, gi) == a)) throw InvariantViolation("dth_root: prime-power root check failed");
      parts.emplace_back(ri, ui(g) / gi);
    }
    // Bezout coefficients for the cofactors g/g_i, built incrementally.
    std::vector<mpz_class> coeff(parts.size());
    mpz_class current = parts[0].second;
    coeff[0] = 1;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      mpz_class gg, u, v;
      mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), current.get_mpz_t(),
                 parts[i].second.get_mpz_t());
      for (std::size_t j = 0; j < i; ++j) coeff[j] *= u;
      coeff[i] = v;
      current = gg;
    }
    if (current != 1) throw InvariantViolation("dth_root: cofactors are not coprime");
    for (std::size_t i = 0; i < parts.size(); ++i) x = x * pow(parts[i].first, coeff[i]);
  }
  FieldElement root = pow(x, lift.t);
  if (!(pow(root, mpz_class(ui(d))) == a)) {
    throw InvariantViolation("dth_root: re-powering check failed");
  }
  return root;
}

FieldElement sample_nonresidue(const PrimeField& field, std::uint64_t prime_power, SeededRng& rng,
                               int max_attempts) {
  if (prime_power < 2) throw InvalidArgument("sample_nonresidue: need a prime power >= 2");
  const std::uint64_t prime = factor_degree(prime_power).factors.front().prime;
  if (!mpz_divisible_ui_p(field.order_minus_one().get_mpz_t(), prime)) {
    throw InvalidArgument("sample_nonresidue: " + std::to_string(prime) + " does not divide q-1");
  }
  const mpz_class cofactor = field.order_minus_one() / ui(prime);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    FieldElement z = field.random_nonzero(rng);
    if (!pow(z, cofactor).is_one()) return z;
  }
  throw BudgetExhausted("sample_nonresidue: no " + std::to_string(prime) + "-nonresidue in " +
                        std::to_string(max_attempts) + " samples");
}

std::optional<mpz_class> dlog_prime_power(const FieldElement& generator, std::uint64_t prime,
                                          unsigned exponent, const FieldElement& target) {
  if (target.is_zero()) return std::nullopt;
  if (exponent == 0) {
    if (target.is_one()) return mpz_class(0);
    return std::nullopt;
  }
  const mpz_class p = ui(prime);
  mpz_class top;  // prime^(exponent-1)
  mpz_ui_pow_ui(top.get_mpz_t(), prime, exponent - 1);
  const FieldElement base = pow(generator, top);  // order exactly prime
  const FieldElement gen_inv = generator.inverse();

  mpz_class x = 0;
  mpz_class place = 1;  // prime^k
  for (unsigned k = 0; k < exponent; ++k) {
    // c = (target * generator^-x)^(prime^(exponent-1-k)) lies in <base>.
    mpz_class shrink;
    mpz_ui_pow_ui(shrink.get_mpz_t(), prime, exponent - 1 - k);
    const FieldElement c = pow(target * pow(gen_inv, x), shrink);
    std::uint64_t digit = 0;
    FieldElement probe = generator.field().one();
    while (!(probe == c)) {
      ++digit;
      if (digit == prime) return std::nullopt;
      probe = probe * base;
    }
    x += place * ui(digit);
    place *= p;
  }
  if (!(pow(generator, x) == target)) return std::nullopt;
  return x;
}

}  // namespace diageq
