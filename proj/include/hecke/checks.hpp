#pragma once

// Parameter families for the oscillatory checks, shared by the command line
// tool, the acceptance runner and the tests. Calibration constants are the
// observed maxima of |error|/bound over these families with headroom.

#include <string>
#include <vector>

#include "hecke/oscillatory.hpp"
#include "hecke/rng.hpp"

namespace hecke {

namespace calibration {
inline constexpr double kDagger = 0.25;     // |main - quad| min(|beta|,|r|)^{3/2}
inline constexpr double kDaggerBound = 5.0; // |main - quad| / min(|beta|^{-3/2}, |r|^{-3/2})
inline constexpr double kStationary = 0.25; // |main - quad| / stationary_error_bound
inline constexpr double kDecay = 1.0;       // |W(1, 1+i beta)| (beta/2)^j, j <= 3
inline constexpr double kDouble = 0.5;      // |I_2| r1 r2 / var(g)
}  // namespace calibration

struct OscRow {
  std::string family;
  double parameter = 0.0;
  cplx main = 0.0;
  cplx quad = 0.0;
  double ratio = 0.0;  // error (or value) over the bound
  double tol = 0.0;    // allowed ratio
  bool pass() const { return ratio <= tol; }
};

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
  return g;
}

// x0 = 1.5 inside the support; beta over [1e2, 1e4].
inline std::vector<OscRow> dagger_family(int points = 13) {
  std::vector<OscRow> rows;
  const SmoothBump W = standard_bump();
  for (double beta : log_grid(1e2, 1e4, points)) {
    const double r = beta / (kTwoPi * 1.5);
    const cplx s(1.0, beta);
    const auto st = w_dagger_stationary(W, r, s);
    const cplx q = w_dagger_quadrature(W, r, s);
    const double err = std::abs(st.main - q);
    rows.push_back({"dagger", beta, st.main, q, err * std::pow(std::min(std::abs(beta), std::abs(r)), 1.5),
                    calibration::kDagger});
    rows.push_back({"dagger_bound", beta, st.main, q, err / st.error_bound, calibration::kDaggerBound});
  }
  return rows;
}

inline double bump_omega_g(const SmoothBump& V, int samples = 2000) {
  double m1 = 0, m2 = 0, m0 = 0;
  for (int i = 1; i < samples; ++i) {
    const auto j = V.jet(V.a + (V.b - V.a) * i / samples);
    m0 = std::max(m0, std::abs(j[0]));
    m1 = std::max(m1, std::abs(j[1]));
    m2 = std::max(m2, std::abs(j[2]));
  }
  // g normalised to peak one: g^(j) << 1/Omega_g^j
  return std::min(m0 / m1, std::sqrt(m0 / m2));
}

// f = T (x - 1.5)^2 with g the standard bump, both error parameterisations.
inline std::vector<OscRow> stationary_family(int points = 9) {
  std::vector<OscRow> rows;
  const SmoothBump V = standard_bump();
  const double peak = V(1.5);
  const double og = bump_omega_g(V);
  for (double T : log_grid(1e2, 1e4, points)) {
    PhasePair pp;
    pp.a = V.a;
    pp.b = V.b;
    pp.f = [T](double x, int k) {
      const double u = x - 1.5;
      switch (k) {
        case 0: return T * u * u;
        case 1: return 2.0 * T * u;
        case 2: return 2.0 * T;
        default: return 0.0;
      }
    };
    pp.g = [V, peak](double x, int k) -> cplx { return V.derivative(x, k) / peak; };
    const cplx q = phase_integral_quadrature(pp);
    for (auto variant : {StationaryVariant::Classic, StationaryVariant::Huxley}) {
      PhaseScales sc{2.0 * T, 1.0, og, variant};
      const auto st = stationary_phase_main(pp, sc);
      rows.push_back({variant == StationaryVariant::Classic ? "stationary" : "stationary_huxley", T, st.main, q,
                      std::abs(st.main - q) / st.error_bound, calibration::kStationary});
    }
  }
  return rows;
}

// r = 1 so x0 = beta/(2 pi) lies right of the support: |W| (beta/(1+|r|))^j stays bounded.
inline std::vector<OscRow> decay_family(int points = 9) {
  std::vector<OscRow> rows;
  const SmoothBump W = standard_bump();
  for (double beta : log_grid(1e2, 1e4, points)) {
    const cplx q = w_dagger_quadrature(W, 1.0, cplx(1.0, beta));
    for (int j = 1; j <= 3; ++j) {
      rows.push_back({"decay_j" + std::to_string(j), beta, 0.0, q, std::abs(q) * std::pow(beta / 2.0, j),
                      calibration::kDecay});
    }
  }
  return rows;
}

// Least-squares slope of log|W(1, 1+i beta)| against log beta.
inline double decay_exponent(const std::vector<OscRow>& decay_rows) {
  std::vector<double> x, y;
  for (const auto& r : decay_rows) {
    // values near the quadrature noise floor carry no slope information
    if (r.family != "decay_j1" || std::abs(r.quad) < 1e-14) continue;
    x.push_back(std::log(r.parameter));
    y.push_back(std::log(std::abs(r.quad)));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  return sxy / sxx;
}

struct PoissonCase {
  std::string kind;
  double center = 0.0, width = 0.0;
  i64 M = 1, shift = 0;
};

inline std::vector<PoissonCase> poisson_cases(std::uint64_t seed, int count = 50) {
  CounterRng rng(seed, 7);
  std::vector<PoissonCase> out;
  for (int i = 0; i < count; ++i) {
    PoissonCase c;
    c.kind = (i % 2 == 0) ? "gaussian" : "bump";
    c.M = rng.integer(1, 8);
    c.shift = rng.integer(0, c.M - 1);
    c.center = rng.uniform(-5.0, 5.0);
    c.width = c.kind == "gaussian" ? rng.uniform(0.3, 3.0) : rng.uniform(2.0, 12.0);
    out.push_back(c);
  }
  return out;
}

inline std::vector<OscRow> poisson_family(std::uint64_t seed, int count = 50, double tol = 1e-8) {
  std::vector<OscRow> rows;
  for (const auto& c : poisson_cases(seed, count)) {
    const TestFunction t = c.kind == "gaussian" ? gaussian_test_function(c.center, c.width)
                                                : bump_test_function(c.center - 0.5 * c.width, c.center + 0.5 * c.width);
    const auto r = poisson_check(t, c.M, c.shift);
    rows.push_back({"poisson_" + c.kind, static_cast<double>(c.M), r.lhs, r.rhs, r.diff, tol});
  }
  return rows;
}

// f = A u^2 + A v^2 + B u v with u = x - 3/2, v = y - 3/2 on [1,2]^2, so the
// stationary point sits in the middle; g is a product of bumps.
inline std::vector<OscRow> double_family() {
  std::vector<OscRow> rows;
  const SmoothBump V = standard_bump();
  struct Case {
    double A, B;
  };
  for (Case cs : {Case{100, 0}, Case{100, 20}, Case{200, 0}, Case{400, 0}, Case{400, 80}}) {
    Phase2D ph;
    const double A = cs.A, B = cs.B;
    ph.f = [=](double x, double y) {
      const double u = x - 1.5, v = y - 1.5;
      return A * u * u + A * v * v + B * u * v;
    };
    ph.fx = [=](double x, double y) { return 2 * A * (x - 1.5) + B * (y - 1.5); };
    ph.fy = [=](double x, double y) { return 2 * A * (y - 1.5) + B * (x - 1.5); };
    ph.fxx = [=](double, double) { return 2 * A; };
    ph.fyy = [=](double, double) { return 2 * A; };
    ph.fxy = [=](double, double) { return B; };
    Amplitude2D g;
    g.g = [V](double x, double y) { return V(x) * V(y); };
    g.gxy = [V](double x, double y) { return V.derivative(x, 1) * V.derivative(y, 1); };
    const double r = std::sqrt(A);
    const auto res = double_integral_bound(ph, g, Rect{1, 2, 1, 2}, r, r);
    rows.push_back({B == 0 ? "double" : "double_cross", A, res.bound, res.value, res.ratio, calibration::kDouble});
  }
  return rows;
}

}  // namespace hecke
