#include <gtest/gtest.h>

#include "hecke/numtheory.hpp"
#include "hecke/rng.hpp"

using namespace hecke;

namespace {

std::vector<bool> sieve(i64 n) {
  std::vector<bool> p(static_cast<size_t>(n + 1), true);
  p[0] = p[1] = false;
  for (i64 i = 2; i * i <= n; ++i)
    if (p[static_cast<size_t>(i)])
      for (i64 j = i * i; j <= n; j += i) p[static_cast<size_t>(j)] = false;
  return p;
}

// Legendre symbol by Euler's criterion, the reference for odd primes.
int euler_criterion(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return pow_mod(a, static_cast<u64>((p - 1) / 2), p) == 1 ? 1 : -1;
}

}  // namespace

TEST(NumTheory, PrimalityMatchesSieve) {
  const auto p = sieve(20000);
  for (i64 n = 0; n <= 20000; ++n) EXPECT_EQ(is_prime(n), p[static_cast<size_t>(n)]) << n;
  EXPECT_TRUE(is_prime(1'000'000'007));
  EXPECT_FALSE(is_prime(1'000'000'007LL * 3));
}

TEST(NumTheory, FactorizeRoundTrips) {
  for (i64 n = 1; n <= 5000; ++n) {
    i64 prod = 1;
    for (auto [q, e] : factorize(n)) {
      EXPECT_TRUE(is_prime(q));
      for (int k = 0; k < e; ++k) prod *= q;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_TRUE(is_squarefree(5));
  EXPECT_FALSE(is_squarefree(4));
  EXPECT_FALSE(is_squarefree(18));
}

TEST(NumTheory, KroneckerExamples) {
  EXPECT_EQ(kronecker_symbol(-4, 5), 1);
  EXPECT_EQ(kronecker_symbol(-4, 3), -1);
  for (i64 a = -30; a <= 30; ++a) EXPECT_EQ(kronecker_symbol(a, 1), 1);
  EXPECT_THROW(kronecker_symbol(3, 0), Error);
}

TEST(NumTheory, KroneckerAgreesWithEulerCriterion) {
  const auto p = sieve(400);
  for (i64 q = 3; q <= 400; ++q) {
    if (!p[static_cast<size_t>(q)]) continue;
    for (i64 a = -50; a <= 50; ++a) EXPECT_EQ(kronecker_symbol(a, q), euler_criterion(a, q)) << a << " " << q;
  }
}

TEST(NumTheory, KroneckerMultiplicativeInModulus) {
  for (i64 a = -20; a <= 20; ++a)
    for (i64 m = 1; m <= 40; ++m)
      for (i64 n = 1; n <= 40; ++n) EXPECT_EQ(kronecker_symbol(a, m * n), kronecker_symbol(a, m) * kronecker_symbol(a, n));
}

TEST(NumTheory, TonelliShanksMatchesExhaustive) {
  const auto p = sieve(1000);
  for (i64 q = 3; q <= 1000; ++q) {
    if (!p[static_cast<size_t>(q)]) continue;
    for (i64 a = 0; a < std::min<i64>(q, 60); ++a) {
      const i64 r = sqrt_mod_prime(a, q);
      const i64 ref = sqrt_mod_exhaustive(a, q);
      EXPECT_EQ(r < 0, ref < 0) << a << " mod " << q;
      if (r >= 0) EXPECT_EQ(mul_mod(r, r, q), a);
    }
  }
}

TEST(NumTheory, HenselLift) {
  for (i64 q : {3, 5, 7, 13, 29}) {
    for (i64 a = 1; a < q; ++a) {
      const i64 r = sqrt_mod_prime(a, q);
      if (r <= 0) continue;
      i64 qk = q * q * q;
      const i64 R = hensel_lift_sqrt(r, a, q, 3);
      EXPECT_EQ(mod128(static_cast<i128>(R) * R - a, qk), 0);
    }
  }
}

TEST(NumTheory, InverseAndCrt) {
  CounterRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const i64 m1 = rng.integer(2, 500), m2 = rng.integer(2, 500);
    if (gcd(m1, m2) != 1) continue;
    const i64 a1 = rng.integer(0, m1 - 1), a2 = rng.integer(0, m2 - 1);
    const i64 x = crt(a1, m1, a2, m2);
    EXPECT_EQ(mod(x, m1), a1);
    EXPECT_EQ(mod(x, m2), a2);
    EXPECT_EQ(mul_mod(inverse_mod(m1, m2), m1, m2), 1 % m2);
  }
  EXPECT_THROW(inverse_mod(6, 9), Error);
}

TEST(NumTheory, PrimitiveRootHasFullOrder) {
  EXPECT_EQ(primitive_root(5), 2);
  EXPECT_EQ(primitive_root(13), 2);
  for (i64 q : {3, 7, 11, 29, 101, 997}) {
    const i64 g = primitive_root(q);
    i64 x = 1;
    for (i64 k = 1; k < q - 1; ++k) {
      x = mul_mod(x, g, q);
      EXPECT_NE(x, 1);
    }
  }
}

TEST(NumTheory, UnitRootReducesExactly) {
  EXPECT_NEAR(std::abs(unit_root(1, 4) - cplx(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_root(1'000'000'001, 4) - unit_root(1, 4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_root(-1, 3) - std::conj(unit_root(1, 3))), 0.0, 1e-15);
}

TEST(NumTheory, CounterRngIsKeyedBySeedAndStream) {
  CounterRng a(42, 1), b(42, 1), c(42, 2);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  EXPECT_EQ(CounterRng(7).at(5), CounterRng(7).at(5));
}
