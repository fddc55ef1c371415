#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

#include "diageq/error.hpp"
#include "diageq/field.hpp"
#include "invariants.hpp"

using namespace diageq;

namespace {

std::uint64_t u(const FieldElement& x) { return x.value().get_ui(); }

bool contains(const std::vector<std::uint64_t>& v, std::uint64_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST(PrimeField, RejectsCompositeAndTiny) {
  EXPECT_THROW(PrimeField(mpz_class(1)), InvalidArgument);
  EXPECT_THROW(PrimeField(mpz_class(15)), InvalidArgument);
  EXPECT_THROW(PrimeField(mpz_class("340282366920938463463374607431768211457")), InvalidArgument);  // 2^128 + 1
  EXPECT_NO_THROW(PrimeField(mpz_class("340282366920938463463374607431768211297")));          // 2^128 - 159
  EXPECT_THROW(PrimeField::from_decimal("q"), InvalidArgument);
}

TEST(FieldElement, SmallExamples) {
  PrimeField f7(mpz_class(7));
  EXPECT_EQ(u(f7.element(3) + f7.element(5)), 1u);
  EXPECT_EQ(u(f7.element(4) * f7.element(6)), 3u);
  EXPECT_EQ(u(pow(f7.element(3), 6L)), 1u);
  EXPECT_EQ(u(pow(f7.element(6), 3L)), 6u);
  EXPECT_EQ(u(pow(f7.element(5), 0L)), 1u);
  EXPECT_EQ(u(f7.element(-1)), 6u);
  EXPECT_THROW(f7.element(3) / f7.zero(), ArithmeticError);
  EXPECT_THROW(pow(f7.zero(), -1L), ArithmeticError);
}

TEST(FieldElement, MixingFieldsIsAnError) {
  PrimeField f7(mpz_class(7));
  PrimeField f11(mpz_class(11));
  EXPECT_THROW(f7.one() + f11.one(), ArithmeticError);
  PrimeField other7(mpz_class(7));
  EXPECT_NO_THROW(f7.one() + other7.one());
}

TEST(FieldElement, AxiomsOnRandomTriples) {
  SeededRng rng(11);
  PrimeField f(mpz_class("170141183460469231731687303715884105727"));  // 2^127 - 1
  for (int i = 0; i < 1000; ++i) {
    const auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      ASSERT_TRUE((a * a.inverse()).is_one());
      ASSERT_TRUE(pow(a, f.order_minus_one()).is_one());
    }
  }
}

TEST(Sqrt, Examples) {
  PrimeField f13(mpz_class(13));
  const auto nr = f13.element(2);
  EXPECT_EQ(u(*sqrt(f13.zero(), nr)), 0u);
  const auto r = sqrt(f13.element(10), nr);
  ASSERT_TRUE(r);
  EXPECT_TRUE(u(*r) == 6 || u(*r) == 7);
  EXPECT_FALSE(sqrt(f13.element(5), nr));
  EXPECT_THROW(sqrt(f13.element(10), f13.element(4)), InvalidArgument);
}

TEST(Sqrt, ExhaustiveSmallPrimes) {
  for (std::uint64_t q : {3u, 5u, 7u, 11u, 13u, 17u, 41u, 97u}) {
    PrimeField f{mpz_class(q)};
    SeededRng rng(q);
    const auto nr = sample_nonresidue(f, 2, rng);
    const auto squares = checks::power_set(q, 2);
    for (std::uint64_t a = 0; a < q; ++a) {
      const auto r = sqrt(f.element(static_cast<long>(a)), nr);
      ASSERT_EQ(r.has_value(), contains(squares, a)) << "q=" << q << " a=" << a;
      if (r) ASSERT_EQ(u(*r * *r), a);
    }
  }
}

TEST(DthRoot, Examples) {
  PrimeField f7(mpz_class(7));
  SeededRng rng(1);
  const auto r = dth_root(f7.element(6), 3, rng);
  ASSERT_TRUE(r);
  EXPECT_TRUE(u(*r) == 3 || u(*r) == 5 || u(*r) == 6);
  EXPECT_FALSE(dth_root(f7.element(2), 3, rng));
  for (std::uint64_t d : {1u, 2u, 3u, 6u, 12u}) {
    const auto one = dth_root(f7.one(), d, rng);
    ASSERT_TRUE(one);
    EXPECT_TRUE(pow(*one, static_cast<long>(d)).is_one());
  }
}

TEST(DthRoot, ExhaustiveAgainstEnumeration) {
  for (std::uint64_t q : {5u, 7u, 13u, 31u, 37u, 61u, 73u, 97u}) {
    PrimeField f{mpz_class(q)};
    SeededRng rng(q * 7);
    for (std::uint64_t d = 1; d <= 12; ++d) {
      const auto powers = checks::power_set(q, d);
      for (std::uint64_t a = 0; a < q; ++a) {
        const auto r = dth_root(f.element(static_cast<long>(a)), d, rng);
        ASSERT_EQ(r.has_value(), contains(powers, a)) << "q=" << q << " d=" << d << " a=" << a;
        if (r) ASSERT_EQ(u(pow(*r, static_cast<long>(d))), a);
      }
    }
  }
}

TEST(DthRoot, LargeFieldRoundTrip) {
  PrimeField f(mpz_class("340282366920938463463374607431768211297"));
  SeededRng rng(5);
  for (std::uint64_t d : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 27u}) {
    for (int i = 0; i < 20; ++i) {
      const auto x = f.random_nonzero(rng);
      const auto a = pow(x, static_cast<long>(d));
      const auto r = dth_root(a, d, rng);
      ASSERT_TRUE(r) << "d=" << d;
      ASSERT_EQ(pow(*r, static_cast<long>(d)), a);
    }
  }
}

TEST(DthRoot, SameSeedSameRoot) {
  PrimeField f(mpz_class(1009));  // 1008 = 2^4 3^2 7
  for (long a = 1; a < 60; ++a) {
    SeededRng r1(42), r2(42);
    const auto x = dth_root(pow(f.element(a), 12L), 12, r1);
    const auto y = dth_root(pow(f.element(a), 12L), 12, r2);
    ASSERT_TRUE(x && y);
    ASSERT_EQ(*x, *y);
  }
}

TEST(SampleNonresidue, Examples) {
  PrimeField f7(mpz_class(7));
  PrimeField f3(mpz_class(3));
  SeededRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto z2 = u(sample_nonresidue(f7, 2, rng));
    EXPECT_TRUE(z2 == 3 || z2 == 5 || z2 == 6);
    const auto z3 = u(sample_nonresidue(f7, 3, rng));
    EXPECT_TRUE(z3 >= 2 && z3 <= 5);
  }
  EXPECT_EQ(u(sample_nonresidue(f3, 2, rng)), 2u);
  EXPECT_THROW(sample_nonresidue(f7, 5, rng), InvalidArgument);
}

TEST(DlogPrimePower, SmallGroup) {
  PrimeField f(mpz_class(17));  // 3 generates F_17^*, order 16
  const auto g = f.element(3);
  for (long x = 0; x < 16; ++x) {
    const auto got = dlog_prime_power(g, 2, 4, pow(g, x));
    ASSERT_TRUE(got);
    EXPECT_EQ(*got, x);
  }
  // 9 = 3^2 has order 8; 3 is outside <9>.
  EXPECT_FALSE(dlog_prime_power(f.element(9), 2, 3, g));
}
