#pragma once

// The exact expansion of delta(n = 0) over moduli q <= Q, and the
// conductor-lowering split delta(n = m) = delta(p | n - m) delta((n - m)/p = 0).

#include <cmath>

#include "hecke/numtheory.hpp"

namespace hecke {

struct DeltaParams {
  i64 n = 0;
  double Q = 1.0;
};

// int_0^1 e(-n x/(a q)) dx in closed form, stable for small arguments:
// (e^{i t} - 1)/(i t) = e^{i t/2} sin(t/2)/(t/2) with t = -2 pi n/(a q).
inline cplx delta_x_integral(i64 n, i64 a, i64 q) {
  if (n == 0) return 1.0;
  const double t = -kTwoPi * static_cast<double>(n) / (static_cast<double>(a) * static_cast<double>(q));
  const double h = 0.5 * t;
  return std::polar(std::sin(h) / h, h);
}

// 2 Re sum_{q <= Q} sum_{a in (Q, q+Q], (a,q)=1} (1/(a q)) e(n abar/q) int_0^1 e(-n x/(a q)) dx.
inline double delta_eval(const DeltaParams& dp) {
  if (dp.Q < 1.0) throw Error(ErrorCode::InvalidArgument, "Q must be at least 1");
  const i64 Qf = static_cast<i64>(std::floor(dp.Q));
  double total = 0.0;
  for (i64 q = 1; q <= Qf; ++q) {
    for (i64 a = Qf + 1; a <= q + Qf; ++a) {
      if (gcd(a, q) != 1) continue;
      const i64 abar = inverse_mod(a, q);
      const cplx term = unit_root(mul_mod(mod(dp.n, q), abar, q), q) * delta_x_integral(dp.n, a, q);
      total += term.real() / (static_cast<double>(a) * static_cast<double>(q));
    }
  }
  return 2.0 * total;
}

inline double delta_eval(i64 n, double Q) { return delta_eval(DeltaParams{n, Q}); }

// Exact integer check of the split, plus the same split with the inner delta
// evaluated by delta_eval at (n - m)/p.
inline bool conductor_lowering_check(i64 n, i64 m, i64 p, double Q = 20.0, double tol = 1e-9) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p must be an odd prime");
  const i64 k = n - m;
  const int lhs = (k == 0);
  const int outer = (k % p == 0);
  const int inner = outer && (k / p == 0);
  if (lhs != outer * inner) return false;
  if (!outer) return true;
  return std::abs(delta_eval(k / p, Q) - lhs) <= tol;
}

}  // namespace hecke
