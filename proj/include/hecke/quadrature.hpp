#pragma once

// Adaptive Gauss-Kronrod (7,15) and a trapezoid rule.

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evals = 0;
  long intervals = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T rk = fc * kWgk[7];
  T rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    T s = f(c - dx) + f(c + dx);
    rk += s * kWgk[j];
    if (j & 1) rg += s * kWg[j / 2];
  }
  return {a, b, rk * h, std::abs((rk - rg) * h)};
}

}  // namespace detail

// Adaptive GK15 starting from the given breakpoints. Stops when the summed
// error estimate is below max(abs_tol, rel_tol |I|).
template <class T, class F>
QuadResult<T> integrate_gk(F f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                           long max_intervals = 200000) {
  using P = detail::Panel<T>;
  std::priority_queue<P> heap;
  QuadResult<T> res;
  T total{};
  double err = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    P pn = detail::gk15<T>(f, breaks[i], breaks[i + 1]);
    res.evals += 15;
    total += pn.value;
    err += pn.err;
    heap.push(pn);
  }
  while (!heap.empty() && err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<long>(heap.size()) >= max_intervals) {
      throw Error(ErrorCode::BudgetExceeded, "quadrature interval budget exhausted");
    }
    P worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    P l = detail::gk15<T>(f, worst.a, mid);
    P r = detail::gk15<T>(f, mid, worst.b);
    res.evals += 30;
    total += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum in position order so the result does not depend on heap history.
  std::vector<P> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const P& x, const P& y) { return x.a < y.a; });
  res.value = T{};
  res.error = 0.0;
  for (const auto& pn : all) {
    res.value += pn.value;
    res.error += pn.err;
  }
  res.intervals = static_cast<long>(all.size());
  return res;
}

template <class T, class F>
QuadResult<T> integrate_gk(F f, double a, double b, double abs_tol, double rel_tol, long max_intervals = 200000) {
  return integrate_gk<T>(f, std::vector<double>{a, b}, abs_tol, rel_tol, max_intervals);
}

// Breakpoints no wider than a quarter period of a phase whose local rate
// (cycles per unit length) is rate(x).
template <class Rate>
std::vector<double> oscillation_breaks(double a, double b, Rate rate, int min_panels = 8) {
  std::vector<double> br{a};
  const double hmax = (b - a) / min_panels;
  double x = a;
  while (x < b) {
    double h = hmax;
    const double r = std::max(rate(x), rate(std::min(b, x + h)));
    if (r > 0) h = std::min(h, 0.25 / r);
    // the rate may grow inside the step; shrink until consistent
    for (int it = 0; it < 30; ++it) {
      const double r2 = rate(std::min(b, x + h));
      if (r2 * h <= 0.25 || h < 1e-12 * (b - a)) break;
      h *= 0.5;
    }
    x = std::min(b, x + h);
    br.push_back(x);
  }
  return br;
}

// Composite trapezoid with n intervals; spectral for smooth compactly
// supported or periodic integrands.
template <class T, class F>
T trapezoid(F f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  T s = (f(a) + f(b)) * 0.5;
  for (long i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

}  // namespace hecke
