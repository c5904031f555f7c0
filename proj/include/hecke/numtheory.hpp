#pragma once

// Elementary number theory on 64-bit integers. Products go through
// __int128 so moduli up to 2^62 are safe.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  if (m == 0) throw Error(ErrorCode::ZeroModulus, "mod by zero");
  if (m < 0) m = -m;
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mod128(i128 a, i64 m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
  return mod128(static_cast<i128>(a) * b, m);
}

inline i64 pow_mod(i64 base, u64 e, i64 m) {
  if (m == 1) return 0;
  i64 b = mod(base, m), r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; m == 1 gives 0.
inline i64 inverse_mod(i64 a, i64 m) {
  if (m == 0) throw Error(ErrorCode::ZeroModulus, "inverse modulo zero");
  if (m < 0) m = -m;
  if (m == 1) return 0;
  i64 g = mod(a, m), x0 = 1, x1 = 0, h = m;
  while (h) {
    i64 t = g / h;
    std::tie(g, h) = std::make_pair(h, g - t * h);
    std::tie(x0, x1) = std::make_pair(x1, x0 - t * x1);
  }
  if (g != 1) throw Error(ErrorCode::NotCoprime, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod(x0, m);
}

inline i64 isqrt(i64 n) {
  if (n < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(i64 n, i64* root = nullptr) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = pow_mod(a, static_cast<u64>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { comp = false; break; }
    }
    if (comp) return false;
  }
  return true;
}

// Trial division; fine for the desk-scale inputs used here.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

// Kronecker symbol (a/n).
inline int kronecker_symbol(i64 a, i64 n) {
  if (n == 0) throw Error(ErrorCode::ZeroModulus, "kronecker symbol with n = 0");
  int res = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) res = -res;
  }
  int v = 0;
  while ((n & 1) == 0) { n >>= 1; ++v; }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    i64 a8 = mod(a, 8);
    if ((v & 1) && (a8 == 3 || a8 == 5)) res = -res;
  }
  a = mod(a, n);
  while (a) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 n8 = n % 8;
      if (n8 == 3 || n8 == 5) res = -res;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) res = -res;
    a %= n;
  }
  return n == 1 ? res : 0;
}

// Square root of a modulo an odd prime p by Tonelli-Shanks.
// Returns -1 if a is a non-residue.
inline i64 sqrt_mod_prime(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (pow_mod(a, static_cast<u64>((p - 1) / 2), p) != 1) return -1;
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) { q >>= 1; ++s; }
  i64 z = 2;
  while (pow_mod(z, static_cast<u64>((p - 1) / 2), p) != p - 1) ++z;
  i64 c = pow_mod(z, static_cast<u64>(q), p);
  i64 r = pow_mod(a, static_cast<u64>((q + 1) / 2), p);
  i64 t = pow_mod(a, static_cast<u64>(q), p);
  int m = s;
  while (t != 1) {
    int i = 0;
    i64 tt = t;
    while (tt != 1) { tt = mul_mod(tt, tt, p); ++i; }
    i64 b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

// Exhaustive square root, the reference for small p.
inline i64 sqrt_mod_exhaustive(i64 a, i64 p) {
  a = mod(a, p);
  for (i64 x = 0; x < p; ++x) {
    if (mul_mod(x, x, p) == a) return x;
  }
  return -1;
}

// Lift a root r of x^2 = a (mod p) to modulus p^k, p odd, p not dividing 2r.
inline i64 hensel_lift_sqrt(i64 r, i64 a, i64 p, int k) {
  i64 pk = p;
  for (int j = 1; j < k; ++j) {
    pk *= p;
    i64 f = mod128(static_cast<i128>(r) * r - a, pk);
    i64 inv2r = inverse_mod(mod(2 * r, pk), pk);
    r = mod128(static_cast<i128>(r) - static_cast<i128>(f) * inv2r, pk);
  }
  return r;
}

// x = a1 mod m1, x = a2 mod m2 with gcd(m1, m2) = 1.
inline i64 crt(i64 a1, i64 m1, i64 a2, i64 m2) {
  i64 inv = inverse_mod(mod(m1, m2), m2);
  i64 t = mul_mod(mod(a2 - a1, m2), inv, m2);
  return mod128(static_cast<i128>(a1) + static_cast<i128>(m1) * t, m1 * m2);
}

inline i64 primitive_root(i64 p) {
  if (p == 2) return 1;
  auto fs = factorize(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [f, e] : fs) {
      if (pow_mod(g, static_cast<u64>((p - 1) / f), p) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  throw Error(ErrorCode::NotPrime, "no primitive root for " + std::to_string(p));
}

// e(num/den) = exp(2 pi i num/den), reduced exactly before the float step.
inline cplx unit_root(i64 num, i64 den) {
  i64 k = mod(num, den);
  double t = kTwoPi * static_cast<double>(k) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

// e(x) for real x.
inline cplx e_of(double x) {
  double t = kTwoPi * (x - std::floor(x));
  return {std::cos(t), std::sin(t)};
}

}  // namespace hecke
