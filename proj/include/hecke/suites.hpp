#pragma once

// Verification sweeps shared by the command line tool and the acceptance
// runner. Each sweep reports rows through a callback and returns a Summary.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hecke/delta.hpp"
#include "hecke/gauss_sums.hpp"
#include "hecke/lfunc.hpp"
#include "hecke/report.hpp"
#include "hecke/voronoi.hpp"

namespace hecke {

// chi = 0 or r = 0 asks for the first admissible choice.
struct CharacterSpec {
  i64 D = 1;
  i64 p = 13;
  i64 chi = 0;
  int r = 0;
  int extension = 0;
};

inline HeckeCharacter build_character(const CharacterSpec& s) {
  const FieldContext ctx = make_field(s.D);
  const PrimeSplitData ps = classify_prime(ctx, s.p);
  HeckeOptions opt;
  opt.extension = s.extension;
  if (s.chi != 0 && s.r != 0) return HeckeCharacter(ctx, ps, make_dirichlet(s.p, s.chi), s.r, opt);
  const i64 k_lo = s.chi ? s.chi : 1, k_hi = s.chi ? s.chi : s.p - 2;
  const int r_lo = s.r ? s.r : 1, r_hi = s.r ? s.r : 12;
  for (i64 k = k_lo; k <= k_hi; ++k) {
    if (mod(k, s.p - 1) == 0) continue;
    for (int r = r_lo; r <= r_hi; ++r) {
      try {
        return HeckeCharacter(ctx, ps, make_dirichlet(s.p, k), r, opt);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnitInconsistency) throw;
      }
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no character of conductor p is trivial on the units");
}

inline IdealLatticeBasis split_rep(const FieldContext& ctx, i64 ell) {
  if (!is_prime(ell) || prime_kind(ctx, ell) != SplitKind::Split) {
    throw Error(ErrorCode::NotSplit, "ell = " + std::to_string(ell) + " does not split");
  }
  return {ell, canonical_root(ctx.D, ell), false};
}

// ---- Gauss sums ----

struct GaussRow {
  i64 a, b, c;
  cplx closed, brute;
  double diff;
};

template <class Fn>
Summary gauss_sweep(i64 cmax, double tol, Fn&& on_row) {
  Summary s;
  for (i64 c = 1; c <= cmax; ++c) {
    const auto roots = roots_of_unity(c);
    for (i64 a = 1; a <= c; ++a) {
      if (gcd(a, c) != 1) continue;
      for (i64 b = 0; b < c; ++b) {
        const GaussSumParams g{a, b, c};
        const cplx cl = quadratic_gauss_closed(g), br = quadratic_gauss_brute(g, roots);
        const double d = std::abs(cl - br);
        s.record(d <= tol, d);
        on_row(GaussRow{a, b, c, cl, br, d});
      }
    }
  }
  return s;
}

// ---- arithmetic part ----

struct ArithCase {
  CharacterSpec chi;
  i64 ell;
  std::vector<i64> qs, ms;
};

inline std::vector<ArithCase> standard_arith_cases() {
  return {
      {{1, 13, 2, 2}, 5, {3, 4, 6, 13, 26, 52}, {1, 13}},
      {{5, 3, 1, 1}, 7, {1, 5, 7, 2, 10, 4, 20, 3, 15, 6, 12}, {1, 3}},
  };
}

inline std::string q_class(i64 q) {
  if (q % 2) return "q_odd";
  return q % 4 == 2 ? "q_2mod4" : "q_4div";
}

inline std::string p_class(i64 p, i64 q, i64 m) {
  if (q % p == 0) return "p_div_q";
  return m % p == 0 ? "p_div_m" : "p_coprime";
}

struct ArithRow {
  i64 D, p, ell, q, m, c, f;
  std::string branch;
  cplx closed, brute;
  double diff;
};

// Closed forms against the brute grid on |c|, |f| <= cmax; when p | q the
// grid is extended by multiples of p up to 4p, since only those carry support.
template <class Fn>
Summary arith_sweep(const ArithCase& ac_case, i64 cmax, double tol, OracleCaps caps, Fn&& on_row) {
  const HeckeCharacter psi = build_character(ac_case.chi);
  const IdealLatticeBasis L = split_rep(psi.field(), ac_case.ell);
  const ArithContext ac = make_arith_context(psi, L);
  Summary s;
  for (i64 q : ac_case.qs) {
    for (i64 m : ac_case.ms) {
      if (gcd(m, q) != 1) continue;
      std::vector<i64> grid;
      for (i64 c = -cmax; c <= cmax; ++c) grid.push_back(c);
      if (q % ac.p == 0) {
        for (i64 k = -4; k <= 4; ++k) grid.push_back(k * ac.p);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      }
      const auto brute = arithmetic_part_brute_grid(ac, q, m, grid, grid, caps);
      const std::string branch = q_class(q) + "/" + p_class(ac.p, q, m);
      for (size_t i = 0; i < grid.size(); ++i) {
        for (size_t j = 0; j < grid.size(); ++j) {
          const cplx cl = arithmetic_part_closed(ac, {q, m, grid[i], grid[j]});
          const cplx br = brute[i * grid.size() + j];
          const double d = std::abs(cl - br);
          s.record(d <= tol, d);
          on_row(ArithRow{ac.D, ac.p, ac.ell, q, m, grid[i], grid[j], branch, cl, br, d});
        }
      }
    }
  }
  return s;
}

// ---- Voronoi ----

struct VoronoiCase {
  CharacterSpec chi;
  i64 ell, q, m;
  double N;
};

// Both fields with -D = 3 mod 4, p | m and p | q among them.
inline std::vector<VoronoiCase> standard_voronoi_cases() {
  return {
      {{1, 13, 2, 2}, 5, 3, 1, 40},  {{1, 13, 2, 2}, 5, 4, 1, 40},  {{1, 13, 2, 2}, 5, 2, 13, 40},
      {{1, 13, 2, 2}, 5, 13, 1, 40}, {{1, 13, 2, 2}, 5, 26, 1, 40}, {{5, 3, 1, 1}, 7, 5, 1, 40},
      {{5, 3, 1, 1}, 7, 6, 1, 40},   {{5, 3, 1, 1}, 7, 4, 3, 40},   {{5, 3, 1, 1}, 7, 10, 3, 40},
      {{5, 3, 1, 1}, 29, 3, 1, 40},
  };
}

inline VoronoiInstance make_instance(const VoronoiCase& vc, double budget = 1.0) {
  HeckeCharacter psi = build_character(vc.chi);
  const IdealLatticeBasis L = split_rep(psi.field(), vc.ell);
  VoronoiInstance inst{std::move(psi), vc.m, vc.q, vc.N, standard_bump(), L};
  inst.budget = inst.budget.scaled(budget);
  return inst;
}

// |lhs - rhs| <= max(rel_tol |lhs|, 10 tail)
inline bool voronoi_passes(const VerificationReport& r, double rel_tol) {
  return r.abs_err <= std::max(rel_tol * std::abs(r.lhs), 10.0 * r.truncation_tail_estimate);
}

struct TermCheck {
  i64 c, f;
  cplx polar, oracle;
  double diff;
};

// The nonzero dual terms nearest the origin, each against the pre-polar integral.
inline std::vector<TermCheck> term_checks(const VoronoiInstance& inst, size_t count) {
  std::vector<DualTerm> terms;
  VoronoiInstance small = inst;
  small.budget.kappa_max = std::min(inst.budget.kappa_max, 40.0);
  dual_sum(small, &terms);
  const double D = static_cast<double>(inst.psi.field().D);
  std::vector<DualTerm> nz;
  for (const auto& t : terms) {
    if (std::abs(t.arith) > 1e-12) nz.push_back(t);
  }
  std::stable_sort(nz.begin(), nz.end(), [D](const DualTerm& x, const DualTerm& y) {
    return D * x.c * x.c + static_cast<double>(x.f) * x.f < D * y.c * y.c + static_cast<double>(y.f) * y.f;
  });
  std::vector<TermCheck> out;
  for (size_t i = 0; i < nz.size() && i < count; ++i) {
    const cplx polar = nz[i].arith * nz[i].analytic;
    const cplx oracle = poisson_oracle(inst, nz[i].c, nz[i].f, inst.budget.caps.single_term);
    out.push_back({nz[i].c, nz[i].f, polar, oracle, std::abs(polar - oracle)});
  }
  return out;
}

// ---- delta ----

struct DeltaRow {
  i64 n;
  double Q, value, diff;
};

template <class Fn>
Summary delta_sweep(i64 nmax, const std::vector<double>& Qs, double tol, Fn&& on_row) {
  Summary s;
  for (double Q : Qs) {
    for (i64 n = -nmax; n <= nmax; ++n) {
      const double v = delta_eval(n, Q);
      const double d = std::abs(v - (n == 0 ? 1.0 : 0.0));
      s.record(d <= tol, d);
      on_row(DeltaRow{n, Q, v, d});
    }
  }
  return s;
}

// ---- L-values ----

struct LValueCheck {
  cplx s;
  i64 terms, prime_bound;
  LSeriesEval series;
  cplx euler;
  double rel_diff;
};

inline LValueCheck lvalue_check(const HeckeCharacter& psi, const CoefficientSeries& lambda, cplx s, i64 terms,
                                i64 prime_bound) {
  LValueCheck c{s, terms, prime_bound, dirichlet_series(lambda, s, terms), euler_product(psi, lambda, s, prime_bound)};
  c.rel_diff = std::abs(c.series.value - c.euler) / std::abs(c.euler);
  return c;
}

// max_n |regenerated - table| and max_n |table - single lattice count|, n <= n_max.
inline std::pair<double, double> regeneration_check(const HeckeCharacter& psi, const CoefficientSeries& lambda,
                                                    i64 n_max) {
  const auto reg = regenerate_lambda(psi, lambda, n_max);
  double d_reg = 0.0, d_direct = 0.0;
  for (i64 n = 1; n <= n_max; ++n) {
    d_reg = std::max(d_reg, std::abs(reg[static_cast<size_t>(n)] - lambda[n]));
    d_direct = std::max(d_direct, std::abs(lambda_at(psi, n) - lambda[n]));
  }
  return {d_reg, d_direct};
}

}  // namespace hecke
