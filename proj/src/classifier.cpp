#include "diageq/classifier.hpp"

#include <string>

#include "diageq/error.hpp"

namespace diageq {

namespace {

mpz_class ui(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class mod(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

// CRT exponents: gamma = alpha^(b*h'), gamma' = alpha^(a*h) with a*h + b*h' = 1.
std::pair<mpz_class, mpz_class> split_exponents(const PiSplit& split) {
  mpz_class g, a, b;
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), split.h_pi_order.get_mpz_t(),
             split.h_piprime_order.get_mpz_t());
  return {mod(b * split.h_piprime_order, split.q_minus_1),
          mod(a * split.h_pi_order, split.q_minus_1)};
}

}  // namespace

std::pair<FieldElement, FieldElement> decompose_pi(const FieldElement& alpha, const PiSplit& split) {
  if (alpha.is_zero()) throw InvalidArgument("decompose_pi: alpha must be nonzero");
  const auto [exp_pi, exp_piprime] = split_exponents(split);
  return {pow(alpha, exp_pi), pow(alpha, exp_piprime)};
}

FieldElement root_piprime(const FieldElement& gamma_prime, std::uint64_t d, const PiSplit& split) {
  const mpz_class r = inverse_mod(ui(d), split.h_piprime_order);
  FieldElement delta = pow(gamma_prime, r);
  if (!(pow(delta, mpz_class(ui(d))) == gamma_prime)) {
    throw InvalidArgument("root_piprime: input is not in H_pi'");
  }
  return delta;
}

mpz_class element_order(const FieldElement& x, const mpz_class& multiple,
                        const std::vector<PrimePower>& factors) {
  mpz_class order = multiple;
  for (const auto& f : factors) {
    const mpz_class p = ui(f.prime);
    for (unsigned i = 0; i < f.exponent; ++i) {
      const mpz_class smaller = order / p;
      if (!pow(x, smaller).is_one()) break;
      order = smaller;
    }
  }
  return order;
}

namespace {

std::optional<mpz_class> pohlig_hellman(const FieldElement& eta, const mpz_class& eta_order,
                                        const std::vector<PrimePower>& factors,
                                        const FieldElement& gamma) {
  if (gamma.is_zero()) return std::nullopt;
  if (eta_order == 1) {
    if (gamma.is_one()) return mpz_class(0);
    return std::nullopt;
  }
  mpz_class x = 0;
  mpz_class modulus = 1;
  for (const auto& f : factors) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), f.prime, f.exponent);
    const mpz_class cofactor = eta_order / pe;
    const auto part = dlog_prime_power(pow(eta, cofactor), f.prime, f.exponent, pow(gamma, cofactor));
    if (!part) return std::nullopt;
    // Combine x (mod modulus) with part (mod pe).
    const mpz_class inv = inverse_mod(modulus % pe, pe);
    const mpz_class k = mod((*part - x) * inv, pe);
    x += modulus * k;
    modulus *= pe;
  }
  x = mod(x, eta_order);
  // Membership failure shows up here: gamma outside <eta> never re-powers.
  if (!(pow(eta, x) == gamma)) return std::nullopt;
  return x;
}

}  // namespace

std::optional<mpz_class> smooth_dlog(const FieldElement& eta, const mpz_class& eta_order,
                                     const FieldElement& gamma) {
  if (eta_order == 1) return pohlig_hellman(eta, eta_order, {}, gamma);
  return pohlig_hellman(eta, eta_order, factor_smooth(eta_order), gamma);
}

ClassifierState::ClassifierState(const PrimeField& field, std::uint64_t d)
    : field_(&field),
      profile_(factor_degree(d)),
      split_(pi_split(field.modulus(), profile_)),
      eta_(field.one()),
      eta_order_(1) {
  exp_pi_ = split_exponents(split_).first;
  root_exp_ = inverse_mod(ui(d), split_.h_piprime_order);
  reset_zetas();
}

ClassifierState ClassifierState::with_generator(const PrimeField& field, std::uint64_t d,
                                                const FieldElement& eta) {
  ClassifierState state(field, d);
  if (eta.is_zero() || !pow(eta, state.split_.h_pi_order).is_one()) {
    throw InvalidArgument("with_generator: eta must lie in H_pi");
  }
  const auto factors = factor_over(state.split_.h_pi_order, state.profile_.primes());
  state.eta_ = eta;
  state.eta_order_ = element_order(eta, state.split_.h_pi_order, factors);
  state.eta_order_factors_ = factor_over(state.eta_order_, state.profile_.primes());
  state.reset_zetas();
  return state;
}

void ClassifierState::reset_zetas() {
  zetas_.clear();
  zeta_exponents_.clear();
  FieldElement z = field_->one();
  for (std::uint64_t i = 0; i < profile_.d; ++i) {
    zetas_.push_back(z);
    zeta_exponents_.push_back(eta_order_ == 1 ? mpz_class(0) : mpz_class(ui(i)));
    z = z * eta_;
  }
}

ClassifyResult ClassifierState::classify(const FieldElement& alpha,
                                         std::optional<std::size_t> preferred) const {
  if (alpha.is_zero()) throw InvalidArgument("classify: alpha must be nonzero");
  const std::uint64_t d = profile_.d;

  const FieldElement gamma = pow(alpha, exp_pi_);
  const FieldElement gamma_prime = alpha * gamma.inverse();
  const FieldElement delta_prime = pow(gamma_prime, root_exp_);

  const std::optional<mpz_class> x = pohlig_hellman(eta_, eta_order_, eta_order_factors_, gamma);
  if (!x) return NeedUpdate{gamma};

  // Cosets of H^d in H are the residues of the logarithm modulo g.
  mpz_class g;
  const mpz_class dz = ui(d);
  mpz_gcd(g.get_mpz_t(), dz.get_mpz_t(), eta_order_.get_mpz_t());
  const mpz_class coset = mod(*x, g);

  std::size_t index = 0;
  if (preferred && *preferred >= 1 && *preferred <= d &&
      mod(zeta_exponents_[*preferred - 1], g) == coset) {
    index = *preferred;
  } else {
    for (std::size_t i = 1; i <= d; ++i) {
      if (mod(zeta_exponents_[i - 1], g) == coset) {
        index = i;
        break;
      }
    }
  }
  if (index == 0) throw InvariantViolation("classify: coset representatives are incomplete");

  // delta = eta^y with d*y = x - e_i (mod |H|).
  const mpz_class diff = *x - zeta_exponents_[index - 1];
  const mpz_class reduced_order = eta_order_ / g;
  const mpz_class y = mod((diff / g) * inverse_mod(dz / g, reduced_order), reduced_order);
  const FieldElement beta = pow(eta_, y) * delta_prime;

  if (!(zetas_[index - 1] * pow(beta, mpz_class(dz)) == alpha)) {
    throw InvariantViolation("classify: alpha != zeta_i * beta^d for alpha = " + alpha.to_string());
  }
  return Classification{index, beta};
}

void ClassifierState::update(const FieldElement& gamma) {
  if (gamma.is_zero() || !pow(gamma, split_.h_pi_order).is_one()) {
    throw InvalidArgument("update: gamma must lie in H_pi");
  }
  const auto pi_factors = factor_over(split_.h_pi_order, profile_.primes());
  const mpz_class gamma_order = element_order(gamma, split_.h_pi_order, pi_factors);
  // In a cyclic group gamma is in <eta> iff its order divides |<eta>|.
  if (mpz_divisible_p(eta_order_.get_mpz_t(), gamma_order.get_mpz_t())) {
    throw InvalidArgument("update: gamma " + gamma.to_string() + " already lies in <eta>");
  }

  mpz_class new_order;
  mpz_lcm(new_order.get_mpz_t(), gamma_order.get_mpz_t(), eta_order_.get_mpz_t());

  // Generator of the cyclic group <gamma, eta>, assembled prime by prime from
  // whichever element carries the full prime power.
  FieldElement generator = field_->one();
  for (const auto& f : factor_over(new_order, profile_.primes())) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), f.prime, f.exponent);
    const bool from_gamma = mpz_divisible_p(gamma_order.get_mpz_t(), pe.get_mpz_t()) != 0;
    const FieldElement& carrier = from_gamma ? gamma : eta_;
    const mpz_class& carrier_order = from_gamma ? gamma_order : eta_order_;
    generator = generator * pow(carrier, mpz_class(carrier_order / pe));
  }
  if (!(new_order > eta_order_)) throw InvariantViolation("update: subgroup did not grow");

  eta_ = generator;
  eta_order_ = new_order;
  eta_order_factors_ = factor_over(eta_order_, profile_.primes());
  reset_zetas();
  ++update_count_;
}

}  // namespace diageq
