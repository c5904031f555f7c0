#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "hecke/suites.hpp"

using namespace hecke;

namespace {

// At n = 0 every integral is 1, so the expansion reduces to
// 2 sum 1/(a q) over the same (q, a) pairs; exact in rationals.
boost::multiprecision::cpp_rational delta_zero_exact(i64 Q) {
  boost::multiprecision::cpp_rational s = 0;
  for (i64 q = 1; q <= Q; ++q)
    for (i64 a = Q + 1; a <= q + Q; ++a)
      if (std::gcd(a, q) == 1) s += boost::multiprecision::cpp_rational(1, a * q);
  return 2 * s;
}

}  // namespace

TEST(Delta, ZeroIsExactlyOne) {
  for (i64 Q = 1; Q <= 12; ++Q) EXPECT_TRUE(delta_zero_exact(Q) == 1) << Q;
  EXPECT_NEAR(delta_eval(0, 7), 1.0, 1e-13);
}

TEST(Delta, Examples) {
  EXPECT_NEAR(delta_eval(3, 5), 0.0, 1e-12);
  EXPECT_NEAR(delta_eval(-12, 20), 0.0, 1e-12);
  EXPECT_THROW(delta_eval(0, 0.5), Error);
}

TEST(Delta, SymmetricInN) {
  for (i64 n = 1; n <= 40; ++n) EXPECT_NEAR(delta_eval(n, 13), delta_eval(-n, 13), 1e-13);
}

TEST(Delta, IndependentOfQ) {
  for (double Q : {5.0, 10.0, 20.0, 50.0}) {
    const auto s = delta_sweep(50, {Q}, 1e-9, [](const DeltaRow&) {});
    EXPECT_EQ(s.fail, 0) << Q;
    EXPECT_LE(s.max_error, 1e-12) << Q;
  }
  // Fractional Q only uses its floor.
  EXPECT_EQ(delta_eval(7, 10.9), delta_eval(7, 10));
}

TEST(Delta, SmallArgumentIntegral) {
  const cplx v = delta_x_integral(1, 1'000'000'000, 1'000'000'000);
  EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(delta_x_integral(5, 1, 1)), 0.0, 1e-15);  // five full periods
}

TEST(Delta, ConductorLowering) {
  for (i64 p : {3, 5, 13})
    for (i64 n = -30; n <= 30; ++n)
      for (i64 m : {0, 1, 7}) EXPECT_TRUE(conductor_lowering_check(n, m, p)) << n << " " << m << " " << p;
  EXPECT_THROW(conductor_lowering_check(1, 1, 9), Error);
  EXPECT_THROW(conductor_lowering_check(1, 1, 2), Error);
}
