#pragma once

// L(s, psi) for Re s > 1: Dirichlet series with a divisor-sum tail bound,
// Euler product oracle, smoothed windows S(N) and an exploratory growth scan.

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hecke/bump.hpp"
#include "hecke/characters.hpp"

namespace hecke {

struct LSeriesEval {
  cplx s = 0.0;
  i64 terms = 0;
  cplx value = 0.0;
  double tail_bound = 0.0;
};

// sum_{n > T} d(n) n^{-sigma} <= sigma T^{1-sigma} ((log T + 1)/(sigma-1) + 1/(sigma-1)^2),
// from partial summation with sum_{n <= x} d(n) <= x (log x + 1).
inline double divisor_tail_bound(i64 T, double sigma) {
  const double t = static_cast<double>(T), s1 = sigma - 1.0;
  return sigma * std::pow(t, -s1) * ((std::log(t) + 1.0) / s1 + 1.0 / (s1 * s1));
}

inline cplx n_pow_minus_s(i64 n, cplx s) { return std::exp(-s * std::log(static_cast<double>(n))); }

inline LSeriesEval dirichlet_series(const CoefficientSeries& lambda, cplx s, i64 terms) {
  if (s.real() < 1.2) throw Error(ErrorCode::AbscissaTooSmall, "series needs Re s >= 1.2");
  if (terms > lambda.n_max) throw Error(ErrorCode::InvalidArgument, "coefficient table too short");
  LSeriesEval ev{s, terms, 0.0, divisor_tail_bound(terms, s.real())};
  // sum from the small end last to limit rounding
  for (i64 n = terms; n >= 1; --n) ev.value += lambda[n] * n_pow_minus_s(n, s);
  return ev;
}

inline LSeriesEval dirichlet_series(const HeckeCharacter& psi, cplx s, i64 terms) {
  if (s.real() < 1.2) throw Error(ErrorCode::AbscissaTooSmall, "series needs Re s >= 1.2");
  return dirichlet_series(lambda_coefficients(psi, terms), s, terms);
}

enum class PrimeFilter { All, SplitOnly, InertOnly, RamifiedOnly };

// Local data at a prime q: lambda(q^k) = s1 lambda(q^{k-1}) - P lambda(q^{k-2})
// for split q (P = psi(Q) psi(Q')), lambda(q^{2k}) = lambda(q^2)^k for inert q,
// lambda(q^k) = lambda(q)^k for ramified q.
struct LocalData {
  SplitKind kind;
  cplx s1 = 0.0;
  cplx P = 0.0;
};

// P comes from lambda(q)^2 - lambda(q^2) when q^2 is in the table. Beyond it
// P = psi((q)) = chi(q), the value of psi on the rational integer q.
inline LocalData local_data(const HeckeCharacter& psi, const CoefficientSeries& lambda, i64 q) {
  LocalData ld{prime_kind(psi.field(), q)};
  const bool have_sq = q <= lambda.n_max / q;
  switch (ld.kind) {
    case SplitKind::Split:
      ld.s1 = lambda[q];
      ld.P = have_sq ? ld.s1 * ld.s1 - lambda[q * q] : psi.chi()(q);
      break;
    case SplitKind::Inert:
      ld.P = have_sq ? lambda[q * q] : psi.chi()(q);
      break;
    case SplitKind::Ramified:
      ld.s1 = lambda[q];
      break;
  }
  return ld;
}

inline cplx local_factor(const LocalData& ld, cplx x) {
  switch (ld.kind) {
    case SplitKind::Split: return 1.0 / (1.0 - ld.s1 * x + ld.P * x * x);
    case SplitKind::Inert: return 1.0 / (1.0 - ld.P * x * x);
    case SplitKind::Ramified: return 1.0 / (1.0 - ld.s1 * x);
  }
  return 1.0;
}

inline bool filter_accepts(PrimeFilter f, SplitKind k) {
  switch (f) {
    case PrimeFilter::All: return true;
    case PrimeFilter::SplitOnly: return k == SplitKind::Split;
    case PrimeFilter::InertOnly: return k == SplitKind::Inert;
    case PrimeFilter::RamifiedOnly: return k == SplitKind::Ramified;
  }
  return false;
}

inline std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n + 1), false);
  for (i64 i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  return out;
}

inline cplx euler_product(const HeckeCharacter& psi, const CoefficientSeries& lambda, cplx s, i64 prime_bound,
                          PrimeFilter filter = PrimeFilter::All) {
  if (s.real() < 1.5) throw Error(ErrorCode::AbscissaTooSmall, "Euler product needs Re s >= 1.5");
  if (prime_bound > lambda.n_max) throw Error(ErrorCode::InvalidArgument, "coefficient table too short");
  cplx prod = 1.0;
  for (i64 q : primes_up_to(prime_bound)) {
    const LocalData ld = local_data(psi, lambda, q);
    if (!filter_accepts(filter, ld.kind)) continue;
    prod *= local_factor(ld, n_pow_minus_s(q, s));
  }
  return prod;
}

inline cplx euler_product(const HeckeCharacter& psi, cplx s, i64 prime_bound, PrimeFilter filter = PrimeFilter::All) {
  if (s.real() < 1.5) throw Error(ErrorCode::AbscissaTooSmall, "Euler product needs Re s >= 1.5");
  if (prime_bound < 2) return 1.0;
  return euler_product(psi, lambda_coefficients(psi, prime_bound), s, prime_bound, filter);
}

// lambda(n) rebuilt from the local data of its prime factors.
inline std::vector<cplx> regenerate_lambda(const HeckeCharacter& psi, const CoefficientSeries& lambda, i64 n_max) {
  std::vector<cplx> out(static_cast<size_t>(n_max + 1), 0.0);
  for (i64 n = 1; n <= n_max; ++n) {
    cplx v = 1.0;
    for (auto [q, e] : factorize(n)) {
      const LocalData ld = local_data(psi, lambda, q);
      cplx pk = 1.0;
      if (ld.kind == SplitKind::Split) {
        cplx prev = 1.0, cur = ld.s1;
        for (int k = 2; k <= e; ++k) {
          const cplx nxt = ld.s1 * cur - ld.P * prev;
          prev = cur;
          cur = nxt;
        }
        pk = cur;
      } else if (ld.kind == SplitKind::Inert) {
        pk = (e & 1) ? cplx(0.0) : std::pow(ld.P, e / 2);
      } else {
        pk = std::pow(ld.s1, e);
      }
      v *= pk;
    }
    out[static_cast<size_t>(n)] = v;
  }
  return out;
}

struct SmoothedWindow {
  double t = 0.0;
  double N = 1.0;
  cplx value = 0.0;
  double trivial_bound = 0.0;   // sum |lambda(n)| V(n/N)
  double divisor_bound = 0.0;   // sum d(n) V(n/N)
};

inline i64 divisor_count(i64 n) {
  i64 d = 1;
  for (auto [q, e] : factorize(n)) d *= (e + 1);
  return d;
}

// S(N) = sum_n lambda(n) n^{-it} V(n/N)
inline SmoothedWindow smoothed_window(const CoefficientSeries& lambda, double t, double N, const SmoothBump& V) {
  if (N > 1e6) throw Error(ErrorCode::InvalidArgument, "N must be at most 1e6");
  SmoothedWindow w{t, N};
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::floor(N * V.a)));
  const i64 hi = static_cast<i64>(std::ceil(N * V.b));
  if (hi > lambda.n_max) throw Error(ErrorCode::InvalidArgument, "coefficient table too short");
  for (i64 n = lo; n <= hi; ++n) {
    const double v = V(static_cast<double>(n) / N);
    if (v == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    w.value += lambda[n] * std::polar(v, -t * ln);
    w.trivial_bound += std::abs(lambda[n]) * v;
    w.divisor_bound += static_cast<double>(divisor_count(n)) * v;
  }
  return w;
}

struct GrowthPolicy {
  double exponent = 1.05;     // X = (t p)^exponent
  SmoothBump V = standard_bump();
  double t_twist_scale = 1.0; // 0 turns off the n^{-it} twist (control runs)
};

struct GrowthRow {
  double t = 0.0;
  double X = 0.0;
  double supN = 0.0;       // argmax N
  double sup_ratio = 0.0;  // max |S(N)|/sqrt(N)
};

struct GrowthFit {
  int n = 0;
  double slope = 0.0, intercept = 0.0, stderr_slope = 0.0, ci_low = 0.0, ci_high = 0.0;
};

struct GrowthScan {
  std::string label = "EXPLORATORY";
  std::vector<GrowthRow> rows;
  GrowthFit fit;
};

// Largest X the scan will touch for the grid, so callers can size the table.
inline double growth_scan_max_x(i64 p, const std::vector<double>& t_grid, const GrowthPolicy& pol = {}) {
  double X = 1.0;
  for (double t : t_grid) X = std::max(X, std::pow(std::abs(t) * p, pol.exponent));
  return X;
}

inline GrowthFit least_squares_fit(const std::vector<double>& x, const std::vector<double>& y) {
  GrowthFit f;
  f.n = static_cast<int>(x.size());
  if (f.n < 2) return f;
  double mx = 0, my = 0;
  for (int i = 0; i < f.n; ++i) {
    mx += x[static_cast<size_t>(i)];
    my += y[static_cast<size_t>(i)];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < f.n; ++i) {
    sxx += (x[static_cast<size_t>(i)] - mx) * (x[static_cast<size_t>(i)] - mx);
    sxy += (x[static_cast<size_t>(i)] - mx) * (y[static_cast<size_t>(i)] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (f.n > 2) {
    double rss = 0;
    for (int i = 0; i < f.n; ++i) {
      const double r = y[static_cast<size_t>(i)] - f.intercept - f.slope * x[static_cast<size_t>(i)];
      rss += r * r;
    }
    f.stderr_slope = std::sqrt(rss / (f.n - 2) / sxx);
    boost::math::students_t dist(f.n - 2);
    const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.ci_low = f.slope - tq * f.stderr_slope;
    f.ci_high = f.slope + tq * f.stderr_slope;
  } else {
    f.ci_low = f.ci_high = f.slope;
  }
  return f;
}

// For each t: sup over N in {1, 2, 4, ...} and N = X of |S(N)|/sqrt(N),
// X = (t p)^exponent; then a log-log fit against t. Diagnostic only.
inline GrowthScan growth_scan(const CoefficientSeries& lambda, i64 p, const std::vector<double>& t_grid,
                              const GrowthPolicy& pol = {}) {
  GrowthScan scan;
  std::vector<double> lx, ly;
  for (double t : t_grid) {
    GrowthRow row{t, std::pow(std::abs(t) * p, pol.exponent)};
    std::vector<double> Ns;
    for (double N = 1.0; N < row.X; N *= 2.0) Ns.push_back(N);
    Ns.push_back(row.X);
    for (double N : Ns) {
      const auto w = smoothed_window(lambda, pol.t_twist_scale * t, N, pol.V);
      const double ratio = std::abs(w.value) / std::sqrt(N);
      if (ratio > row.sup_ratio) {
        row.sup_ratio = ratio;
        row.supN = N;
      }
    }
    scan.rows.push_back(row);
    if (t > 0 && row.sup_ratio > 0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(row.sup_ratio));
    }
  }
  scan.fit = least_squares_fit(lx, ly);
  return scan;
}

}  // namespace hecke
