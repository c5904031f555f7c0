#pragma once

// Compactly supported weights with closed-form derivatives up to order 4.

#include <array>
#include <cmath>

#include "hecke/error.hpp"

namespace hecke {

enum class BumpKind { StandardExpBump, PolynomialSpline };

struct SmoothBump {
  BumpKind kind = BumpKind::StandardExpBump;
  double a = 1.0;
  double b = 2.0;
  double normalization = 1.0;

  // Derivatives 0..4 at x.
  std::array<double, 5> jet(double x) const {
    std::array<double, 5> out{0, 0, 0, 0, 0};
    if (!(x > a && x < b)) return out;
    const double u = (x - a) * (b - x);
    const double u1 = (a + b) - 2.0 * x;
    const double u2 = -2.0;
    if (kind == BumpKind::StandardExpBump) {
      const double w = 1.0 / u;
      if (w > 700.0) return out;
      const double V = normalization * std::exp(-w);
      const double iu = 1.0 / u, iu2 = iu * iu, iu3 = iu2 * iu, iu4 = iu3 * iu, iu5 = iu4 * iu;
      // phi = -1/u
      const double p1 = u1 * iu2;
      const double p2 = u2 * iu2 - 2.0 * u1 * u1 * iu3;
      const double p3 = -6.0 * u1 * u2 * iu3 + 6.0 * u1 * u1 * u1 * iu4;
      const double p4 = -6.0 * u2 * u2 * iu3 + 36.0 * u1 * u1 * u2 * iu4 - 24.0 * u1 * u1 * u1 * u1 * iu5;
      out[0] = V;
      out[1] = p1 * V;
      out[2] = (p2 + p1 * p1) * V;
      out[3] = (p3 + 3.0 * p1 * p2 + p1 * p1 * p1) * V;
      out[4] = (p4 + 4.0 * p1 * p3 + 3.0 * p2 * p2 + 6.0 * p1 * p1 * p2 + p1 * p1 * p1 * p1) * V;
      return out;
    }
    // ((x-a)(b-x))^6 scaled to peak value normalization.
    const double half = 0.5 * (b - a);
    const double s = normalization / std::pow(half * half, 6);
    const double n = 6.0;
    out[0] = s * std::pow(u, 6);
    out[1] = s * n * std::pow(u, 5) * u1;
    out[2] = s * (n * (n - 1) * std::pow(u, 4) * u1 * u1 + n * std::pow(u, 5) * u2);
    out[3] = s * (n * (n - 1) * (n - 2) * std::pow(u, 3) * u1 * u1 * u1 + 3 * n * (n - 1) * std::pow(u, 4) * u1 * u2);
    out[4] = s * (n * (n - 1) * (n - 2) * (n - 3) * u * u * std::pow(u1, 4) +
                  6 * n * (n - 1) * (n - 2) * std::pow(u, 3) * u1 * u1 * u2 + 3 * n * (n - 1) * std::pow(u, 4) * u2 * u2);
    return out;
  }

  double operator()(double x) const { return jet(x)[0]; }
  double derivative(double x, int j) const {
    if (j < 0 || j > 4) throw Error(ErrorCode::InvalidArgument, "derivative order must be 0..4");
    return jet(x)[static_cast<size_t>(j)];
  }
};

inline SmoothBump standard_bump(double a = 1.0, double b = 2.0) { return {BumpKind::StandardExpBump, a, b, 1.0}; }

}  // namespace hecke
