#include <gtest/gtest.h>

#include "hecke/suites.hpp"

using namespace hecke;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

VoronoiInstance gaussian(i64 q, i64 m = 1, double N = 40) { return make_instance({{1, 13, 2, 2}, 5, q, m, N}); }

}  // namespace

// Both sums straight from the elements of Z[i]: lambda(n) is a quarter of the
// psi-mass on norm n, and the lattice above 5 is a + 2b = 0 mod 5.
TEST(Voronoi, SumsMatchElementOracle) {
  const auto inst = gaussian(3);
  cplx direct = 0, lattice = 0;
  for (i64 a = -20; a <= 20; ++a)
    for (i64 b = -20; b <= 20; ++b) {
      const i64 n = a * a + b * b;
      if (n == 0) continue;
      const cplx v = inst.psi.eval_total({a, b});
      direct += v * unit_root(n, 3) * inst.V(n / 40.0) / 4.0;
      if (mod(a + 2 * b, 5) == 0) lattice += v * unit_root(n, 15) * inst.V(n / 200.0);
    }
  EXPECT_NEAR(std::abs(direct_sum(inst) - direct), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(class_sum(inst) - lattice), 0.0, 1e-12);
  // Frozen from the element oracle above.
  EXPECT_NEAR(std::abs(class_sum(inst) - cplx(-0.2710657206629899, 0.069161676550988205)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(direct_sum(inst) - cplx(0.065211691413458478, -0.0252721774757136)), 0.0, 1e-13);
}

// The direct sum over n equals the class decomposition over ideals, with no
// dual side involved.
TEST(Voronoi, ClassDecompositionMatchesDirectSum) {
  for (const CharacterSpec& cs : {CharacterSpec{1, 13, 2, 2}, CharacterSpec{5, 3, 1, 1}, CharacterSpec{5, 3, 1, 1, 1}}) {
    const auto psi = build_character(cs);
    const i64 ell = psi.reps()[0].ell;
    for (double N : {20.0, 50.0}) {
      for (i64 q : {1, 3, 4}) {
        const auto inst = make_instance({cs, ell, q, 1, N});
        const cplx a = direct_sum(inst), b = class_decomposition(inst);
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-10) << cs.D << " " << N << " " << q;
      }
    }
  }
}

TEST(Voronoi, EmptyWindow) {
  const auto inst = gaussian(3, 1, 0.1);
  EXPECT_EQ(direct_sum(inst), 0.0);
  EXPECT_EQ(class_sum(inst), 0.0);
}

TEST(Voronoi, DefaultInstanceAgrees) {
  const auto rep = verify(gaussian(3));
  ASSERT_TRUE(rep.rel_err.has_value());
  EXPECT_LE(*rep.rel_err, 1e-4);
  EXPECT_GT(rep.terms_used, 100);
  EXPECT_TRUE(voronoi_passes(rep, 1e-4));
}

TEST(Voronoi, DualTermsLieOnSupport) {
  for (const auto& vc : standard_voronoi_cases()) {
    auto inst = make_instance(vc);
    inst.budget.kappa_max = 60;
    std::vector<DualTerm> terms;
    const auto d = dual_sum(inst, &terms);
    EXPECT_EQ(d.support_violations, 0);
    const auto ac = arith_context(inst);
    for (const auto& t : terms) EXPECT_TRUE(arith_support_holds(ac, inst.q, t.c, t.f)) << t.c << " " << t.f;
  }
}

TEST(Voronoi, OppositePointsDifferBySignOfWeight) {
  const auto inst = gaussian(4);
  for (auto [c, f] : std::vector<std::pair<i64, i64>>{{1, 7}, {2, -3}, {-5, 11}, {0, 9}}) {
    const cplx a = analytic_part(inst, c, f), b = analytic_part(inst, -c, -f);
    const double sign = inst.psi.weight() % 2 ? -1.0 : 1.0;
    EXPECT_NEAR(std::abs(b - sign * a), 0.0, 1e-12 * (1 + std::abs(a)));
  }
  EXPECT_EQ(analytic_part(inst, 0, 0), 0.0);
}

TEST(Voronoi, PolarReductionMatchesPlaneIntegral) {
  for (const auto& vc : standard_voronoi_cases()) {
    const auto checks = term_checks(make_instance(vc), 5);
    ASSERT_EQ(checks.size(), 5u);
    for (const auto& t : checks) EXPECT_LE(t.diff, 1e-8) << vc.q << " " << t.c << " " << t.f;
  }
}

TEST(Voronoi, LargerBudgetReducesError) {
  const auto inst = gaussian(4);
  double prev = 1e300;
  for (double t : {0.25, 1.0, 4.0}) {
    auto scaled = inst;
    scaled.budget = inst.budget.scaled(t);
    const auto rep = verify(scaled);
    EXPECT_LT(rep.abs_err, prev) << t;
    prev = rep.abs_err;
  }
}

TEST(Voronoi, NegativeControlDisagrees) {
  const auto rep = negative_control(gaussian(3));
  ASSERT_TRUE(rep.rel_err.has_value());
  EXPECT_GE(*rep.rel_err, 0.1);
}

TEST(Voronoi, Validation) {
  EXPECT_EQ(code_of([] { verify(gaussian(3, 3)); }), ErrorCode::NotCoprime);
  EXPECT_EQ(code_of([] { verify(gaussian(3, 5)); }), ErrorCode::NotCoprime);
  EXPECT_EQ(code_of([] {
              auto inst = gaussian(3);
              inst.N = 0;
              validate(inst);
            }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { validate(make_instance({{2, 3, 0, 0}, 11, 3, 1, 40})); }), ErrorCode::UnsupportedCase);
  EXPECT_EQ(code_of([] { validate(make_instance({{3, 7, 0, 0}, 13, 3, 1, 40})); }), ErrorCode::UnsupportedCase);
}

TEST(Voronoi, ExperimentalEvenFieldOddModulus) {
  auto inst = make_instance({{2, 3, 0, 0}, 11, 5, 1, 30});
  inst.experimental_even_d = true;
  const auto rep = verify(inst);
  EXPECT_TRUE(voronoi_passes(rep, 1e-3)) << rep.abs_err;
}
