#pragma once

// Arithmetic of K = Q(sqrt(-D)): elements, norms, splitting of primes,
// prime ideal lattices and class identification by reduced forms.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hecke/numtheory.hpp"

namespace hecke {

// RT23: O_K = Z[sqrt(-D)] (-D = 2,3 mod 4). RT1: O_K = Z[(1+sqrt(-D))/2].
enum class RingType { RT23, RT1 };

enum class SplitKind { Split, Inert, Ramified };

inline const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::Ramified: return "ramified";
  }
  return "?";
}

// a + b sqrt(-D), or (a + b sqrt(-D))/2 when half is set.
struct RingElement {
  i64 a = 0;
  i64 b = 0;
  bool half = false;
};

// Binary quadratic form a x^2 + b xy + c y^2.
struct Form {
  i64 a = 0, b = 0, c = 0;
  friend bool operator==(const Form&, const Form&) = default;
  friend auto operator<=>(const Form&, const Form&) = default;
};

struct PrimeSplitData {
  i64 p = 0;
  SplitKind kind = SplitKind::Inert;
  i64 d = 0;  // canonical root of d^2 = -D mod p, 0 < d < p/2; split only
};

// Prime ideal of norm ell: elements with ell | a + b * root, where root is
// d_ell or -d_ell (conjugate).
struct IdealLatticeBasis {
  i64 ell = 0;
  i64 d_ell = 0;
  bool conjugate = false;

  i64 root() const { return conjugate ? ell - d_ell : d_ell; }
  IdealLatticeBasis conj() const { return {ell, d_ell, !conjugate}; }
  friend bool operator==(const IdealLatticeBasis&, const IdealLatticeBasis&) = default;
};

// Ideal of odd norm n with no rational integer factor, given by a root of
// r^2 = -D mod n. Membership: n | A + B r in doubled coordinates.
struct PrimitiveIdeal {
  i64 n = 1;
  i64 root = 0;
};

struct FieldContext {
  i64 D = 1;
  RingType ring_type = RingType::RT23;
  i64 disc = -4;
  int omega = 4;
  int class_number = 1;
  std::vector<Form> reduced_forms;
  std::vector<IdealLatticeBasis> class_reps;
};

// ---- elements ----

// Coordinates (A, B) with x = (A + B sqrt(-D))/2.
inline std::pair<i64, i64> doubled(const RingElement& x) {
  return x.half ? std::make_pair(x.a, x.b) : std::make_pair(2 * x.a, 2 * x.b);
}

inline RingElement from_doubled(const FieldContext& ctx, i64 A, i64 B) {
  if ((A & 1) == 0 && (B & 1) == 0) return {A / 2, B / 2, false};
  if (ctx.ring_type != RingType::RT1 || ((A - B) & 1)) {
    throw Error(ErrorCode::InvalidArgument, "coordinates do not define an integral element");
  }
  return {A, B, true};
}

inline bool valid_element(const FieldContext& ctx, const RingElement& x) {
  if (!x.half) return true;
  return ctx.ring_type == RingType::RT1 && ((x.a - x.b) & 1) == 0;
}

inline i64 norm(const FieldContext& ctx, const RingElement& x) {
  if (!valid_element(ctx, x)) throw Error(ErrorCode::InvalidArgument, "invalid ring element");
  i64 n = x.a * x.a + x.b * x.b * ctx.D;
  return x.half ? n / 4 : n;
}

inline RingElement add(const FieldContext& ctx, const RingElement& x, const RingElement& y) {
  auto [A1, B1] = doubled(x);
  auto [A2, B2] = doubled(y);
  return from_doubled(ctx, A1 + A2, B1 + B2);
}

inline RingElement mul(const FieldContext& ctx, const RingElement& x, const RingElement& y) {
  auto [A1, B1] = doubled(x);
  auto [A2, B2] = doubled(y);
  return from_doubled(ctx, (A1 * A2 - ctx.D * B1 * B2) / 2, (A1 * B2 + A2 * B1) / 2);
}

inline bool equal(const RingElement& x, const RingElement& y) {
  return doubled(x) == doubled(y);
}

inline std::vector<RingElement> units(const FieldContext& ctx) {
  if (ctx.D == 1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  if (ctx.D == 3) {
    return {{1, 0}, {1, 1, true}, {-1, 1, true}, {-1, 0}, {-1, -1, true}, {1, -1, true}};
  }
  return {{1, 0}, {-1, 0}};
}

// ---- forms ----

inline Form reduce_form(Form f) {
  for (;;) {
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
    }
    if (f.b > f.a || f.b <= -f.a) {
      i64 disc = f.b * f.b - 4 * f.a * f.c;
      i64 two_a = 2 * f.a;
      i64 b = mod(f.b, two_a);
      if (b > f.a) b -= two_a;
      f.b = b;
      f.c = (f.b * f.b - disc) / (4 * f.a);
      continue;
    }
    if (f.a > f.c) continue;
    if (f.b < 0 && f.a == f.c) f.b = -f.b;
    return f;
  }
}

// All primitive reduced forms of the given negative discriminant.
inline std::vector<Form> reduced_forms(i64 disc) {
  std::vector<Form> out;
  i64 amax = isqrt(-disc / 3);
  for (i64 a = 1; a <= amax; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - disc;
      if (num % (4 * a)) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

inline Form principal_form(const FieldContext& ctx) {
  return ctx.ring_type == RingType::RT23 ? Form{1, 0, ctx.D} : Form{1, 1, (1 + ctx.D) / 4};
}

inline Form ideal_form(const FieldContext& ctx, const PrimitiveIdeal& I) {
  const i64 n = I.n;
  if (ctx.ring_type == RingType::RT23) {
    i64 r = mod(I.root, n);
    i64 c = static_cast<i64>((static_cast<i128>(r) * r + ctx.D) / n);
    return reduce_form({n, -2 * r, c});
  }
  i64 t = mod(-I.root, n);
  if ((t & 1) == 0) t += n;
  i64 c = static_cast<i64>((static_cast<i128>(t) * t + ctx.D) / (4 * n));
  return reduce_form({n, t, c});
}

// ---- primes ----

// Splitting of any prime q (including 2) via the discriminant.
inline SplitKind prime_kind(const FieldContext& ctx, i64 q) {
  int k = kronecker_symbol(ctx.disc, q);
  return k == 1 ? SplitKind::Split : (k == 0 ? SplitKind::Ramified : SplitKind::Inert);
}

inline i64 canonical_root(i64 D, i64 p) {
  i64 d = sqrt_mod_prime(mod(-D, p), p);
  if (d < 0) throw Error(ErrorCode::NotSplit, std::to_string(p) + " is not split");
  if (2 * d > p) d = p - d;
  return d;
}

inline PrimeSplitData classify_prime(const FieldContext& ctx, i64 p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  PrimeSplitData ps{p, prime_kind(ctx, p), 0};
  if (ps.kind == SplitKind::Split) ps.d = canonical_root(ctx.D, p);
  return ps;
}

inline i64 split_root(const FieldContext& ctx, i64 p) {
  auto ps = classify_prime(ctx, p);
  if (ps.kind != SplitKind::Split) throw Error(ErrorCode::NotSplit, std::to_string(p) + " is " + to_string(ps.kind));
  return ps.d;
}

// Reduction map O_K -> Z/p attached to the root d.
inline i64 residue_map(const FieldContext& ctx, const PrimeSplitData& ps, const RingElement& x) {
  if (ps.kind != SplitKind::Split) throw Error(ErrorCode::NotSplit, "residue map needs a split prime");
  const i64 p = ps.p;
  if (!x.half) return mod(mod(x.a, p) + mul_mod(mod(x.b, p), ps.d, p), p);
  i64 s = mod(mod(x.a, p) + mul_mod(mod(x.b, p), ps.d, p), p);
  return mul_mod(s, inverse_mod(2, p), p);
}

// ---- ideals ----

inline PrimitiveIdeal to_ideal(const IdealLatticeBasis& L) { return {L.ell, L.root()}; }

inline bool contains(const PrimitiveIdeal& I, const RingElement& x) {
  auto [A, B] = doubled(x);
  return mod128(static_cast<i128>(A) + static_cast<i128>(B) * I.root, I.n) == 0;
}

inline bool contains(const IdealLatticeBasis& L, const RingElement& x) {
  return contains(to_ideal(L), x);
}

// Product of ideals with coprime norms.
inline PrimitiveIdeal ideal_product(const PrimitiveIdeal& I, const PrimitiveIdeal& J) {
  if (gcd(I.n, J.n) != 1) throw Error(ErrorCode::NotCoprime, "ideal norms must be coprime");
  if (I.n == 1) return J;
  if (J.n == 1) return I;
  return {I.n * J.n, crt(mod(I.root, I.n), I.n, mod(J.root, J.n), J.n)};
}

inline PrimitiveIdeal ideal_power(const FieldContext& ctx, const IdealLatticeBasis& L, int k) {
  if (k == 0) return {1, 0};
  i64 n = 1;
  for (int j = 0; j < k; ++j) n *= L.ell;
  return {n, hensel_lift_sqrt(L.root(), mod(-ctx.D, n), L.ell, k)};
}

// Visit every element of I (or of O_K when I is empty) with norm in
// [lo, hi], ordered by b then a.
template <class Fn>
void for_each_point(const FieldContext& ctx, const std::optional<PrimitiveIdeal>& I, i64 lo, i64 hi, Fn&& fn) {
  if (hi < 0) return;
  lo = std::max<i64>(lo, 0);
  const i64 D = ctx.D;
  if (ctx.ring_type == RingType::RT23) {
    const i64 n = I ? I->n : 1;
    const i64 bmax = isqrt(hi / D);
    for (i64 b = -bmax; b <= bmax; ++b) {
      i64 rest = hi - D * b * b;
      i64 amax = isqrt(rest);
      i64 a0 = I ? mod128(-static_cast<i128>(b) * I->root, n) : 0;
      i64 a = -amax + mod(a0 + amax, n);
      for (; a <= amax; a += n) {
        i64 N = a * a + D * b * b;
        if (N < lo) continue;
        fn(RingElement{a, b, false}, N);
      }
    }
    return;
  }
  const i64 n = I ? I->n : 1;
  const i64 step = 2 * n;
  const i64 Bmax = isqrt(4 * hi / D);
  for (i64 B = -Bmax; B <= Bmax; ++B) {
    i64 rest = 4 * hi - D * B * B;
    i64 Amax = isqrt(rest);
    i64 r = I ? mod128(-static_cast<i128>(B) * I->root, n) : 0;
    i64 A0 = (n == 1) ? mod(B, 2) : crt(r, n, mod(B, 2), 2);
    i64 A = -Amax + mod(A0 + Amax, step);
    for (; A <= Amax; A += step) {
      i64 N4 = A * A + D * B * B;
      if (N4 < 4 * lo) continue;
      fn(from_doubled(ctx, A, B), N4 / 4);
    }
  }
}

// Every lattice point of norm <= X, zero included.
inline std::vector<RingElement> enumerate_lattice(const FieldContext& ctx,
                                                  const std::optional<IdealLatticeBasis>& L, double X) {
  std::vector<RingElement> out;
  if (X < 0) return out;
  std::optional<PrimitiveIdeal> I;
  if (L) I = to_ideal(*L);
  for_each_point(ctx, I, 0, static_cast<i64>(std::floor(X)), [&](const RingElement& x, i64) { out.push_back(x); });
  return out;
}

// Some element of I with norm exactly I.n, if I is principal.
inline std::optional<RingElement> find_generator(const FieldContext& ctx, const PrimitiveIdeal& I) {
  std::optional<RingElement> g;
  const i64 n = I.n;
  if (ctx.ring_type == RingType::RT23) {
    for (i64 b = 0; b * b * ctx.D <= n && !g; ++b) {
      i64 s;
      if (!is_square(n - ctx.D * b * b, &s)) continue;
      for (RingElement x : {RingElement{s, b}, RingElement{-s, b}, RingElement{s, -b}, RingElement{-s, -b}}) {
        if (contains(I, x)) { g = x; break; }
      }
    }
    return g;
  }
  for (i64 B = 0; B * B * ctx.D <= 4 * n && !g; ++B) {
    i64 s;
    if (!is_square(4 * n - ctx.D * B * B, &s)) continue;
    if ((s - B) & 1) continue;
    for (auto [A, BB] : {std::pair{s, B}, std::pair{-s, B}, std::pair{s, -B}, std::pair{-s, -B}}) {
      RingElement x = from_doubled(ctx, A, BB);
      if (contains(I, x)) { g = x; break; }
    }
  }
  return g;
}

inline Form class_form(const FieldContext& ctx, const IdealLatticeBasis& L) {
  return ideal_form(ctx, to_ideal(L));
}

// One split prime ideal per class, scanning odd split primes upward and
// skipping those in avoid.
inline std::vector<IdealLatticeBasis> class_representatives(const FieldContext& ctx, i64 search_bound,
                                                            const std::vector<i64>& avoid = {}) {
  std::vector<IdealLatticeBasis> reps;
  std::set<Form> seen;
  for (i64 ell = 3; ell <= search_bound; ell += 2) {
    if (!is_prime(ell) || prime_kind(ctx, ell) != SplitKind::Split) continue;
    if (std::find(avoid.begin(), avoid.end(), ell) != avoid.end()) continue;
    const i64 d = canonical_root(ctx.D, ell);
    for (bool conj : {false, true}) {
      IdealLatticeBasis L{ell, d, conj};
      Form f = class_form(ctx, L);
      if (seen.insert(f).second) reps.push_back(L);
      if (static_cast<int>(reps.size()) == ctx.class_number) return reps;
    }
  }
  throw Error(ErrorCode::SearchExhausted,
              "found " + std::to_string(reps.size()) + " of " + std::to_string(ctx.class_number) + " classes below " +
                  std::to_string(search_bound));
}

inline FieldContext make_field(i64 D, i64 search_bound = 10000) {
  if (D < 1) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (!is_squarefree(D)) throw Error(ErrorCode::NotSquarefree, std::to_string(D) + " is not squarefree");
  FieldContext ctx;
  ctx.D = D;
  ctx.ring_type = (mod(-D, 4) == 1) ? RingType::RT1 : RingType::RT23;
  ctx.disc = ctx.ring_type == RingType::RT1 ? -D : -4 * D;
  ctx.omega = D == 1 ? 4 : (D == 3 ? 6 : 2);
  ctx.reduced_forms = reduced_forms(ctx.disc);
  ctx.class_number = static_cast<int>(ctx.reduced_forms.size());
  ctx.class_reps = class_representatives(ctx, search_bound);
  return ctx;
}

}  // namespace hecke
