#pragma once

// Oscillatory integrals: W-dagger transform, stationary phase main terms
// with explicit error terms, a two-dimensional second-derivative bound and
// a numerical Poisson summation check.

#include <functional>
#include <optional>
#include <vector>

#include "hecke/bessel.hpp"
#include "hecke/bump.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

struct StationaryResult {
  cplx main = 0.0;
  double error_bound = 0.0;
  std::optional<double> stationary_point;
};

struct OscTolerance {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  long max_intervals = 400000;
};

// W-dagger(r, s) = int W(x) e(-r x) x^{s-1} dx by adaptive GK on panels of at
// most a quarter period.
inline cplx w_dagger_quadrature(const SmoothBump& W, double r, cplx s, OscTolerance tol = {}) {
  const double sigma = s.real(), beta = s.imag();
  if (std::abs(beta) > 1e5 || std::abs(r) > 1e5) throw Error(ErrorCode::InvalidArgument, "|r|, |Im s| must be <= 1e5");
  auto rate = [&](double x) { return std::abs(-r + beta / (kTwoPi * x)); };
  auto breaks = oscillation_breaks(W.a, W.b, rate);
  auto f = [&](double x) -> cplx {
    const double w = W(x);
    if (w == 0.0) return 0.0;
    return w * std::pow(x, sigma - 1.0) * std::polar(1.0, -kTwoPi * r * x + beta * std::log(x));
  };
  return integrate_gk<cplx>(f, breaks, tol.abs_tol, tol.rel_tol, tol.max_intervals).value;
}

inline StationaryResult w_dagger_stationary(const SmoothBump& W, double r, cplx s) {
  const double sigma = s.real(), beta = s.imag();
  if (r == 0.0 || beta == 0.0) throw Error(ErrorCode::DegeneratePhase, "x0 = beta/(2 pi r) undefined");
  StationaryResult res;
  res.error_bound = std::min(std::pow(std::abs(beta), -1.5), std::pow(std::abs(r), -1.5));
  const double x0 = beta / (kTwoPi * r);
  if (x0 <= 0.0) return res;
  res.stationary_point = x0;
  const double w = W(x0);
  if (w == 0.0) return res;
  const cplx sq = std::sqrt(cplx(-beta, 0.0));
  res.main = std::sqrt(kTwoPi) * unit_root(1, 8) / sq * w * std::pow(x0, sigma) *
             std::polar(1.0, beta * (std::log(x0) - 1.0));
  return res;
}

// f with derivatives 0..4 and g with derivatives 0..2 on [a, b].
struct PhasePair {
  std::function<double(double, int)> f;
  std::function<cplx(double, int)> g;
  double a = 0.0, b = 1.0;
};

// Error term of the stationary phase formula. Classic: the first term is
// Omega^4/(Theta^2 kappa^3); Huxley: Omega^4/(Theta^3 kappa).
enum class StationaryVariant { Classic, Huxley };

struct PhaseScales {
  double theta = 1.0;    // Theta_f
  double omega = 1.0;    // Omega_f
  double omega_g = 1.0;  // Omega_g
  StationaryVariant variant = StationaryVariant::Classic;
};

inline double stationary_error_bound(const PhaseScales& sc, double kappa) {
  const double T = sc.theta, O = sc.omega, G = sc.omega_g;
  const double first = sc.variant == StationaryVariant::Classic ? std::pow(O, 4) / (T * T * kappa * kappa * kappa)
                                                                : std::pow(O, 4) / (T * T * T * kappa);
  return first + O / std::pow(T, 1.5) + O * O * O / (std::pow(T, 1.5) * G * G);
}

// Bound for an integral without stationary point; Lambda = min |f'|.
inline double first_derivative_bound(const PhaseScales& sc, double lambda) {
  const double T = sc.theta, O = sc.omega, G = sc.omega_g;
  return T / (O * O * lambda * lambda * lambda) * (1.0 + O / G + (O * O) / (G * G) * lambda / (T / O));
}

inline StationaryResult stationary_phase_main(const PhasePair& pp, const PhaseScales& sc, int samples = 256) {
  const double a = pp.a, b = pp.b;
  const double lower = sc.theta / (sc.omega * sc.omega);
  for (int i = 0; i <= samples; ++i) {
    const double x = a + (b - a) * i / samples;
    const double f2 = pp.f(x, 2);
    if (!(f2 > 0.0) || f2 < 1e-3 * lower) {
      throw Error(ErrorCode::NonConvexPhase, "f'' is not bounded below by Theta/Omega^2 at x = " + std::to_string(x));
    }
  }
  double lo = a, hi = b;
  if (!(pp.f(lo, 1) < 0.0 && pp.f(hi, 1) > 0.0)) throw Error(ErrorCode::NoStationaryPoint, "f' has no sign change");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (pp.f(mid, 1) < 0.0 ? lo : hi) = mid;
  }
  const double x0 = 0.5 * (lo + hi);
  StationaryResult res;
  res.stationary_point = x0;
  res.main = pp.g(x0, 0) * e_of(pp.f(x0, 0) + 0.125) / std::sqrt(pp.f(x0, 2));
  res.error_bound = stationary_error_bound(sc, std::min(b - x0, x0 - a));
  return res;
}

inline cplx phase_integral_quadrature(const PhasePair& pp, OscTolerance tol = {}) {
  auto rate = [&](double x) { return std::abs(pp.f(x, 1)); };
  auto breaks = oscillation_breaks(pp.a, pp.b, rate);
  auto h = [&](double x) -> cplx { return pp.g(x, 0) * e_of(pp.f(x, 0)); };
  return integrate_gk<cplx>(h, breaks, tol.abs_tol, tol.rel_tol, tol.max_intervals).value;
}

// Two-variable phase and amplitude with the derivatives the bound needs.
struct Phase2D {
  std::function<double(double, double)> f, fx, fy, fxx, fyy, fxy;
};
struct Amplitude2D {
  std::function<double(double, double)> g, gxy;
};
struct Rect {
  double ax = 0, bx = 1, ay = 0, by = 1;
};

struct DoubleIntegralResult {
  cplx value = 0.0;
  double variation = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // |value| / bound
};

// Value by a tensor trapezoid rule (g vanishes on the boundary), bound
// var(g)/(r1 r2). Hessian conditions are checked on a sample grid with
// implied constant hessian_c.
inline DoubleIntegralResult double_integral_bound(const Phase2D& ph, const Amplitude2D& amp, const Rect& R, double r1,
                                                  double r2, double hessian_c = 1.0, int check_grid = 24) {
  for (int i = 0; i <= check_grid; ++i) {
    for (int j = 0; j <= check_grid; ++j) {
      const double x = R.ax + (R.bx - R.ax) * i / check_grid, y = R.ay + (R.by - R.ay) * j / check_grid;
      const double fxx = ph.fxx(x, y), fyy = ph.fyy(x, y), fxy = ph.fxy(x, y);
      if (fxx < hessian_c * r1 * r1 || fyy < hessian_c * r2 * r2 || fxx * fyy - fxy * fxy < hessian_c * r1 * r1 * r2 * r2) {
        throw Error(ErrorCode::HessianViolation, "Hessian condition fails at (" + std::to_string(x) + ", " +
                                                     std::to_string(y) + ")");
      }
    }
  }
  double rate = 0.0;
  for (int i = 0; i <= check_grid; ++i) {
    for (int j = 0; j <= check_grid; ++j) {
      const double x = R.ax + (R.bx - R.ax) * i / check_grid, y = R.ay + (R.by - R.ay) * j / check_grid;
      rate = std::max({rate, std::abs(ph.fx(x, y)) * (R.bx - R.ax), std::abs(ph.fy(x, y)) * (R.by - R.ay)});
    }
  }
  auto run = [&](long n) {
    const double hx = (R.bx - R.ax) / n, hy = (R.by - R.ay) / n;
    cplx s = 0.0;
    double var = 0.0;
    for (long i = 1; i < n; ++i) {
      const double x = R.ax + hx * i;
      for (long j = 1; j < n; ++j) {
        const double y = R.ay + hy * j;
        const double g = amp.g(x, y);
        var += std::abs(amp.gxy(x, y));
        if (g != 0.0) s += g * e_of(ph.f(x, y));
      }
    }
    return std::make_pair(s * hx * hy, var * hx * hy);
  };
  const long n = static_cast<long>(2.0 * rate) + 200;
  auto [v1, var1] = run(n);
  DoubleIntegralResult res;
  res.value = v1;
  res.variation = var1;
  res.bound = var1 / (r1 * r2);
  res.ratio = res.bound > 0 ? std::abs(v1) / res.bound : 0.0;
  return res;
}

// A test function h with its Fourier transform hat h(xi) = int h(x) e(-x xi) dx
// and a window outside which h is negligible.
struct TestFunction {
  std::function<double(double)> h;
  std::function<cplx(double)> hhat;
  double lo = 0.0, hi = 0.0;
  double hhat_floor = 1e-17;  // transform values below this count as zero
};

// exp(-pi ((x - mu)/w)^2)
inline TestFunction gaussian_test_function(double mu, double w) {
  TestFunction t;
  t.h = [=](double x) {
    const double z = (x - mu) / w;
    return std::exp(-kPi * z * z);
  };
  t.hhat = [=](double xi) { return w * std::exp(-kPi * w * w * xi * xi) * e_of(-mu * xi); };
  t.lo = mu - 12.0 * w;
  t.hi = mu + 12.0 * w;
  return t;
}

// Standard bump moved to [a, b]; transform by quadrature.
inline TestFunction bump_test_function(double a, double b) {
  TestFunction t;
  const SmoothBump V = standard_bump();
  const double L = b - a;
  t.h = [=](double x) { return V(1.0 + (x - a) / L); };
  t.hhat = [=](double xi) {
    auto rate = [&](double) { return std::abs(xi) * L; };
    auto br = oscillation_breaks(1.0, 2.0, rate);
    auto f = [&](double u) -> cplx {
      const double v = V(u);
      return v == 0.0 ? cplx(0.0) : v * e_of(-xi * (a + (u - 1.0) * L));
    };
    return L * integrate_gk<cplx>(f, br, 1e-15, 1e-13).value;
  };
  t.lo = a;
  t.hi = b;
  t.hhat_floor = 1e-13;
  return t;
}

struct PoissonResult {
  cplx lhs = 0.0, rhs = 0.0;
  double diff = 0.0;
  long dual_terms = 0;
};

// sum_{m = shift mod M} h(m) against (1/M) sum_n hat h(n/M) e(n shift/M).
inline PoissonResult poisson_check(const TestFunction& t, i64 M, i64 shift, double cutoff = -1.0,
                                   long max_terms = 200000) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be positive");
  if (cutoff < 0) cutoff = t.hhat_floor;
  PoissonResult res;
  const i64 first = static_cast<i64>(std::ceil(t.lo));
  i64 m0 = first + mod(shift - first, M);
  for (i64 m = m0; m <= t.hi; m += M) res.lhs += t.h(static_cast<double>(m));
  cplx rhs = t.hhat(0.0);
  int quiet = 0;
  long n = 1;
  for (; n <= max_terms && quiet < 16; ++n) {
    const cplx a = t.hhat(static_cast<double>(n) / M), b = t.hhat(-static_cast<double>(n) / M);
    rhs += a * unit_root(n * shift, M) + b * unit_root(-n * shift, M);
    quiet = (std::abs(a) + std::abs(b) < cutoff) ? quiet + 1 : 0;
  }
  res.rhs = rhs / static_cast<double>(M);
  res.dual_terms = n - 1;
  res.diff = std::abs(res.lhs - res.rhs);
  return res;
}

}  // namespace hecke
