#include <gtest/gtest.h>

#include "hecke/suites.hpp"

using namespace hecke;

namespace {

cplx literal_gauss(i64 a, i64 b, i64 c) {
  cplx s = 0;
  for (i64 x = 0; x < c; ++x) s += unit_root(mod(a * x * x + b * x, c), c);
  return s;
}

ArithContext context(const CharacterSpec& cs, i64 ell) {
  const auto psi = build_character(cs);
  return make_arith_context(psi, split_rep(psi.field(), ell));
}

}  // namespace

TEST(GaussSum, Examples) {
  EXPECT_NEAR(std::abs(quadratic_gauss_closed({1, 0, 3}) - cplx(0, std::sqrt(3.0))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(quadratic_gauss_closed({1, 0, 6})), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(quadratic_gauss_closed({1, 1, 4})), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(quadratic_gauss_closed({2, 0, 5}) + std::sqrt(5.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(quadratic_gauss_closed({1, 2, 8}) - literal_gauss(1, 2, 8)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(literal_gauss(1, 2, 8) - 4.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(literal_gauss(1, 0, 3) - (1.0 + 2.0 * unit_root(1, 3))), 0.0, 1e-12);
}

TEST(GaussSum, OddModulusHasModulusSqrtC) {
  for (i64 c = 1; c <= 199; c += 2)
    for (i64 a = 1; a < c; ++a)
      if (gcd(a, c) == 1) EXPECT_NEAR(std::abs(quadratic_gauss_closed({a, 0, c})), std::sqrt(double(c)), 1e-10);
}

TEST(GaussSum, ClosedMatchesLiteralSum) {
  for (i64 c = 1; c <= 64; ++c)
    for (i64 a = -c; a <= c; ++a) {
      if (gcd(a, c) != 1) continue;
      for (i64 b = 0; b < c; ++b)
        EXPECT_NEAR(std::abs(quadratic_gauss_closed({a, b, c}) - literal_gauss(a, b, c)), 0.0, 1e-9)
            << a << " " << b << " " << c;
    }
}

// g(a, b, c1 c2) = g(a c2, b, c1) g(a c1, b, c2) for coprime c1, c2; this is
// how the even part of c is split off.
TEST(GaussSum, CoprimeFactorisation) {
  for (int k = 1; k <= 3; ++k) {
    const i64 c1 = 1LL << k;
    for (i64 c2 : {1, 3, 5, 7, 9, 15, 21}) {
      const i64 c = c1 * c2;
      for (i64 a = 1; a < c; ++a) {
        if (gcd(a, c) != 1) continue;
        for (i64 b = 0; b < c; ++b) {
          const cplx whole = literal_gauss(a, b, c);
          const cplx split = literal_gauss(a * c2, b, c1) * literal_gauss(a * c1, b, c2);
          EXPECT_NEAR(std::abs(whole - split), 0.0, 1e-10);
          EXPECT_NEAR(std::abs(quadratic_gauss_closed({a * c2, b, c1}) * quadratic_gauss_closed({a * c1, b, c2}) -
                               quadratic_gauss_closed({a, b, c})),
                      0.0, 1e-10);
        }
      }
    }
  }
}

TEST(GaussSum, RejectsBadInput) {
  EXPECT_THROW(quadratic_gauss_closed({2, 0, 4}), Error);
  EXPECT_THROW(quadratic_gauss_brute({1, 0, 0}), Error);
}

TEST(ArithPart, GoldenSupportValue) {
  const auto ac = context({1, 13, 2, 2}, 5);
  // Frozen from the literal character sum.
  const cplx want(0.016130050446971685, -0.00903890560070684);
  EXPECT_NEAR(std::abs(arithmetic_part_brute(ac, {3, 1, -8, -1}) - want), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(arithmetic_part_closed(ac, {3, 1, -8, -1}) - want), 0.0, 1e-12);
  // Off the support lattice both sides vanish.
  ASSERT_FALSE(arith_support_holds(ac, 3, -8, -2));
  EXPECT_NEAR(std::abs(arithmetic_part_brute(ac, {3, 1, -8, -2})), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(arithmetic_part_closed(ac, {3, 1, -8, -2})), 0.0, 1e-14);
}

TEST(ArithPart, PDividesQNeedsPDividesC) {
  const auto ac = context({1, 13, 2, 2}, 5);
  for (i64 c = -6; c <= 6; ++c) {
    if (c == 0) continue;
    for (i64 f = -20; f <= 20; ++f) {
      EXPECT_NEAR(std::abs(arithmetic_part_closed(ac, {13, 1, c, f})), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(arithmetic_part_brute(ac, {13, 1, c, f})), 0.0, 1e-13);
    }
  }
}

TEST(ArithPart, GaussianFieldGrid) {
  const auto ac = context({1, 5, 0, 0}, 13);
  std::vector<i64> grid;
  for (i64 c = -20; c <= 20; ++c) grid.push_back(c);
  for (i64 q : {1, 3, 4, 5, 8}) {
    for (i64 m : {1, 3, 5}) {
      if (gcd(m, q) != 1) continue;
      const auto brute = arithmetic_part_brute_grid(ac, q, m, grid, grid);
      for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = 0; j < grid.size(); ++j) {
          const cplx b = brute[i * grid.size() + j];
          EXPECT_NEAR(std::abs(arithmetic_part_closed(ac, {q, m, grid[i], grid[j]}) - b), 0.0, 1e-9);
          if (std::abs(b) > 1e-12) EXPECT_TRUE(arith_support_holds(ac, q, grid[i], grid[j]));
        }
    }
  }
}

TEST(ArithPart, GridOracleMatchesLiteralSum) {
  const auto ac = context({5, 3, 1, 1}, 7);
  const std::vector<i64> cs{-7, -3, 0, 2, 9}, fs{-11, -1, 0, 4, 21};
  for (i64 q : {2, 4, 5, 6, 15}) {
    const auto grid = arithmetic_part_brute_grid(ac, q, 1, cs, fs);
    for (size_t i = 0; i < cs.size(); ++i)
      for (size_t j = 0; j < fs.size(); ++j)
        EXPECT_NEAR(std::abs(grid[i * fs.size() + j] - arithmetic_part_brute(ac, {q, 1, cs[i], fs[j]})), 0.0, 1e-13);
  }
}

TEST(ArithPart, StandardSweepCoversEveryBranch) {
  std::set<std::string> branches;
  for (const auto& c : standard_arith_cases()) {
    const auto s = arith_sweep(c, 20, 1e-8, {}, [&](const ArithRow& r) { branches.insert(r.branch); });
    EXPECT_EQ(s.fail, 0);
    EXPECT_LE(s.max_error, 1e-8);
  }
  EXPECT_EQ(branches.size(), 9u);
}

TEST(ArithPart, Preconditions) {
  const auto ac = context({1, 13, 2, 2}, 5);
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of([&] { arithmetic_part_closed(ac, {3, 3, 1, 1}); }), ErrorCode::NotCoprime);
  EXPECT_EQ(code_of([&] { arithmetic_part_closed(ac, {3, 5, 1, 1}); }), ErrorCode::NotCoprime);
  const auto even = context({2, 3, 0, 0}, 11);
  EXPECT_EQ(code_of([&] { arithmetic_part_closed(even, {2, 1, 0, 0}); }), ErrorCode::UnsupportedCase);
  OracleCaps tiny;
  tiny.single_term = tiny.grid = 100;
  EXPECT_EQ(code_of([&] { arithmetic_part_brute(ac, {3, 1, 0, 0}, tiny); }), ErrorCode::OracleTooLarge);
}
