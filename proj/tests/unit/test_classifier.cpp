#include <gtest/gtest.h>

#include "diageq/classifier.hpp"
#include "diageq/error.hpp"
#include "diageq/numth.hpp"

using namespace diageq;

namespace {

std::uint64_t u(const FieldElement& x) { return x.value().get_ui(); }

// Classifies alpha, growing the state on every failure.
Classification classify_growing(ClassifierState& state, const FieldElement& alpha) {
  for (;;) {
    auto res = state.classify(alpha);
    if (auto* c = std::get_if<Classification>(&res)) return *c;
    state.update(std::get<NeedUpdate>(res).gamma);
  }
}

}  // namespace

TEST(DecomposePi, Examples) {
  PrimeField f7(mpz_class(7));
  const auto split = pi_split(7, factor_degree(3));
  const auto [g1, gp1] = decompose_pi(f7.one(), split);
  EXPECT_TRUE(g1.is_one() && gp1.is_one());
  const auto [g3, gp3] = decompose_pi(f7.element(3), split);
  EXPECT_EQ(u(g3), 4u);
  EXPECT_EQ(u(gp3), 6u);
  const auto [g6, gp6] = decompose_pi(f7.element(6), split);
  EXPECT_EQ(u(g6), 1u);
  EXPECT_EQ(u(gp6), 6u);
  EXPECT_THROW(decompose_pi(f7.zero(), split), InvalidArgument);
}

TEST(DecomposePi, Recomposes) {
  PrimeField f(mpz_class(1009));
  SeededRng rng(2);
  for (std::uint64_t d : {2u, 3u, 4u, 6u, 7u, 12u}) {
    const auto split = pi_split(1009, factor_degree(d));
    for (int i = 0; i < 200; ++i) {
      const auto a = f.random_nonzero(rng);
      const auto [g, gp] = decompose_pi(a, split);
      ASSERT_EQ(g * gp, a);
      ASSERT_TRUE(pow(g, split.h_pi_order).is_one());
      ASSERT_TRUE(pow(gp, split.h_piprime_order).is_one());
    }
  }
}

TEST(RootPiprime, Examples) {
  PrimeField f7(mpz_class(7)), f13(mpz_class(13));
  EXPECT_TRUE(root_piprime(f7.one(), 3, pi_split(7, factor_degree(3))).is_one());
  EXPECT_EQ(u(root_piprime(f7.element(6), 3, pi_split(7, factor_degree(3)))), 6u);
  EXPECT_EQ(u(root_piprime(f13.element(3), 2, pi_split(13, factor_degree(2)))), 9u);
}

TEST(SmoothDlog, Examples) {
  PrimeField f7(mpz_class(7));
  EXPECT_EQ(*smooth_dlog(f7.element(2), 3, f7.one()), 0);
  EXPECT_EQ(*smooth_dlog(f7.element(2), 3, f7.element(4)), 2);
  EXPECT_FALSE(smooth_dlog(f7.element(2), 3, f7.element(6)));
}

TEST(Classify, Examples) {
  PrimeField f7(mpz_class(7));
  ClassifierState fresh(f7, 3);
  for (const auto& z : fresh.zetas()) EXPECT_TRUE(z.is_one());
  const auto res = fresh.classify(f7.element(6));  // 6 = 3^3
  ASSERT_TRUE(std::holds_alternative<Classification>(res));
  EXPECT_EQ(std::get<Classification>(res).coset_index, 1u);
  EXPECT_EQ(u(pow(std::get<Classification>(res).beta, 3L)), 6u);

  const auto fail = fresh.classify(f7.element(3));
  ASSERT_TRUE(std::holds_alternative<NeedUpdate>(fail));
  EXPECT_EQ(u(std::get<NeedUpdate>(fail).gamma), 4u);

  const auto state = ClassifierState::with_generator(f7, 3, f7.element(2));
  EXPECT_EQ(u(state.zeta(2)), 2u);
  EXPECT_EQ(u(state.zeta(3)), 4u);
  const auto c = state.classify(f7.element(3));
  ASSERT_TRUE(std::holds_alternative<Classification>(c));
  EXPECT_EQ(std::get<Classification>(c).coset_index, 3u);
  EXPECT_EQ(u(std::get<Classification>(c).beta), 6u);
}

TEST(Update, Examples) {
  PrimeField f7(mpz_class(7));
  ClassifierState s(f7, 3);
  s.update(f7.element(4));
  EXPECT_EQ(s.eta_order(), 3);
  EXPECT_TRUE(u(s.eta()) == 2 || u(s.eta()) == 4);
  EXPECT_EQ(s.update_count(), 1u);

  ClassifierState t(f7, 3);
  EXPECT_THROW(t.update(f7.one()), InvalidArgument);

  PrimeField f13(mpz_class(13));
  auto g = ClassifierState::with_generator(f13, 2, f13.element(12));
  EXPECT_EQ(g.eta_order(), 2);
  g.update(f13.element(5));
  EXPECT_EQ(g.eta_order(), 4);
}

TEST(Classify, RandomElementsAfterGrowth) {
  SeededRng rng(17);
  for (const char* q : {"13", "1009", "65537", "4294967291", "340282366920938463463374607431768211297"}) {
    PrimeField f = PrimeField::from_decimal(q);
    for (std::uint64_t d : {2u, 3u, 4u, 5u, 6u, 8u}) {
      if (!mpz_divisible_ui_p(f.order_minus_one().get_mpz_t(), d)) continue;
      ClassifierState s(f, d);
      std::vector<FieldElement> seen;
      for (int i = 0; i < 300; ++i) {
        const auto a = f.random_nonzero(rng);
        const auto c = classify_growing(s, a);
        ASSERT_GE(c.coset_index, 1u);
        ASSERT_LE(c.coset_index, d);
        ASSERT_EQ(s.zeta(c.coset_index) * pow(c.beta, static_cast<long>(d)), a);
        seen.push_back(a);
      }
      ASSERT_LT(s.update_count(), f.bits());
      for (const auto& a : seen) ASSERT_TRUE(std::holds_alternative<Classification>(s.classify(a)));
    }
  }
}

TEST(Classify, PreferredIndexWithinCoset) {
  // d = 4 over F_13: with eta of order 2 the zetas repeat (1, 12, 1, 12).
  PrimeField f13(mpz_class(13));
  const auto s = ClassifierState::with_generator(f13, 4, f13.element(12));
  const auto plain = std::get<Classification>(s.classify(f13.one()));
  EXPECT_EQ(plain.coset_index, 1u);
  const auto pref = std::get<Classification>(s.classify(f13.one(), 3));
  EXPECT_EQ(pref.coset_index, 3u);
  EXPECT_TRUE(pow(pref.beta, 4L).is_one());
  const auto other = std::get<Classification>(s.classify(f13.element(12), 3));
  EXPECT_EQ(other.coset_index, 2u);
}
