#pragma once

// Bessel functions J_nu of integer order. Three regimes: power series for
// small x, Miller backward recurrence in the middle band, Hankel's
// asymptotic expansion for large x.

#include <cmath>
#include <vector>

#include "hecke/numtheory.hpp"

namespace hecke {

enum class BesselRegime { Series, Miller, Asymptotic };

inline double bessel_j_series(int nu, double x) {
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const double h = 0.5 * x;
  double t = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
  double s = t;
  const double h2 = h * h;
  for (int k = 1; k < 500; ++k) {
    t *= -h2 / (static_cast<double>(k) * (k + nu));
    s += t;
    if (std::abs(t) < 1e-17 * std::abs(s) && k > h) break;
  }
  return s;
}

inline double bessel_j_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0;
  double term = 1.0;  // a_k(nu)/x^k
  double last = 1e300;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    const double at = std::abs(term);
    if (at > last) break;  // asymptotic series starts to diverge
    switch (k % 4) {
      case 0: P += term; break;
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
    }
    last = at;
    if (at < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

// Backward recurrence normalised by J_0 + 2 sum J_{2k} = 1.
inline double bessel_j_miller(int nu, double x) {
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const double top = std::max<double>(nu, x);
  int n = 2 * static_cast<int>((top + 20.0 + std::sqrt(60.0 * top)) / 2.0);
  double jp1 = 0.0, j = 1e-300, result = 0.0, sum = 0.0;
  for (int k = n; k > 0; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;  // j now holds J_{k-1} (unnormalised)
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      result *= 1e-250;
      sum *= 1e-250;
    }
    if (k - 1 == nu) result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0 * j;
  }
  sum += j;
  return result / sum;
}

inline BesselRegime bessel_regime(int nu, double x) {
  if (x <= 8.0 || x * x <= 0.5 * (nu + 1.0)) return BesselRegime::Series;
  if (x >= 25.0 && x >= 0.5 * nu * nu + 25.0) return BesselRegime::Asymptotic;
  return BesselRegime::Miller;
}

inline double bessel_j(int nu, double x) {
  if (nu < 0 || x < 0) throw Error(ErrorCode::InvalidArgument, "bessel_j needs nu >= 0 and x >= 0");
  switch (bessel_regime(nu, x)) {
    case BesselRegime::Series: return bessel_j_series(nu, x);
    case BesselRegime::Asymptotic: return bessel_j_asymptotic(nu, x);
    case BesselRegime::Miller: return bessel_j_miller(nu, x);
  }
  return 0.0;
}

}  // namespace hecke
