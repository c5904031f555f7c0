#pragma once

// Dirichlet characters mod p, Hecke characters of conductor a split prime
// ideal with weight r, and the coefficient series lambda(n).

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "hecke/quadfield.hpp"

namespace hecke {

struct DirichletCharacter {
  i64 p = 0;
  i64 generator = 0;
  i64 k = 0;
  std::vector<i64> log_table;  // log_table[x] = discrete log of x, -1 at 0
  std::vector<cplx> roots;     // roots[j] = e(j/(p-1))

  cplx operator()(i64 x) const {
    i64 r = mod(x, p);
    if (r == 0) return 0.0;
    return roots[static_cast<size_t>(mod(k * log_table[static_cast<size_t>(r)], p - 1))];
  }
  bool primitive() const { return mod(k, p - 1) != 0; }
};

inline DirichletCharacter make_dirichlet(i64 p, i64 k, bool require_primitive = true) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  DirichletCharacter chi;
  chi.p = p;
  chi.k = mod(k, p - 1);
  if (require_primitive && chi.k == 0) throw Error(ErrorCode::NonPrimitive, "k = 0 gives the trivial character");
  chi.generator = primitive_root(p);
  chi.log_table.assign(static_cast<size_t>(p), -1);
  i64 x = 1;
  for (i64 j = 0; j < p - 1; ++j) {
    chi.log_table[static_cast<size_t>(x)] = j;
    x = mul_mod(x, chi.generator, p);
  }
  chi.roots.resize(static_cast<size_t>(p - 1));
  for (i64 j = 0; j < p - 1; ++j) chi.roots[static_cast<size_t>(j)] = unit_root(j, p - 1);
  return chi;
}

inline cplx eval_dirichlet(const DirichletCharacter& chi, i64 x) { return chi(x); }

inline DirichletCharacter conj(const DirichletCharacter& chi) {
  DirichletCharacter c = chi;
  c.k = mod(-chi.k, chi.p - 1);
  return c;
}

// tau(chi) = sum_b chi(b) e(b/p).
inline cplx gauss_sum_tau(const DirichletCharacter& chi) {
  cplx s = 0;
  for (i64 b = 1; b < chi.p; ++b) s += chi(b) * unit_root(b, chi.p);
  return s;
}

struct HeckeOptions {
  int extension = 0;  // which of the h extensions to the class group
  i64 search_bound = 10000;
};

class HeckeCharacter {
 public:
  HeckeCharacter(FieldContext ctx, PrimeSplitData ps, DirichletCharacter chi, int r, HeckeOptions opt = {})
      : ctx_(std::move(ctx)), ps_(ps), chi_(std::move(chi)), r_(r), opt_(opt) {
    if (ps_.kind != SplitKind::Split) throw Error(ErrorCode::NotSplit, "conductor prime must split");
    if (chi_.p != ps_.p) throw Error(ErrorCode::InvalidArgument, "character modulus differs from conductor prime");
    if (!chi_.primitive()) throw Error(ErrorCode::NonPrimitive, "character must be primitive");
    if (r_ <= 0) throw Error(ErrorCode::InvalidArgument, "weight r must be positive");
    for (const auto& u : units(ctx_)) {
      cplx v = eval_total(u);
      if (std::abs(v - 1.0) > 1e-9) {
        throw Error(ErrorCode::UnitInconsistency, "psi(unit) = " + std::to_string(v.real()) + "+" +
                                                      std::to_string(v.imag()) + "i, not 1");
      }
    }
    build_class_phases();
  }

  const FieldContext& field() const { return ctx_; }
  const PrimeSplitData& conductor() const { return ps_; }
  const DirichletCharacter& chi() const { return chi_; }
  int weight() const { return r_; }
  int extension() const { return opt_.extension; }
  const std::vector<IdealLatticeBasis>& reps() const { return reps_; }
  const std::vector<cplx>& class_phases() const { return phases_; }

  // (x/|x|)^r; exact integer powering while it fits in 128 bits.
  cplx direction_power(const RingElement& x) const {
    auto [A, B] = doubled(x);
    const double n4 = static_cast<double>(A) * A + static_cast<double>(ctx_.D) * B * B;
    const double sd = std::sqrt(static_cast<double>(ctx_.D));
    if (0.5 * r_ * std::log2(n4 + 1.0) < 120.0) {
      i128 X = 1, Y = 0;
      for (int j = 0; j < r_; ++j) {
        i128 nx = X * A - static_cast<i128>(ctx_.D) * Y * B;
        i128 ny = X * B + Y * A;
        X = nx;
        Y = ny;
      }
      const double scale = std::pow(n4, 0.5 * r_);
      return {static_cast<double>(X) / scale, static_cast<double>(Y) * sd / scale};
    }
    cplx z = cplx(static_cast<double>(A), static_cast<double>(B) * sd) / std::sqrt(n4);
    cplx out = 1.0;
    for (int e = r_; e; e >>= 1, z *= z) {
      if (e & 1) out *= z;
    }
    return out;
  }

  // psi on any nonzero element; zero on the conductor ideal.
  cplx eval_total(const RingElement& x) const {
    cplx c = chi_(residue_map(ctx_, ps_, x));
    if (c == 0.0) return 0.0;
    return c * direction_power(x);
  }

  // psi on elements outside the conductor ideal; elements of the conjugate
  // ideal are fine.
  cplx eval(const RingElement& x) const {
    if (residue_map(ctx_, ps_, x) == 0) throw Error(ErrorCode::NotCoprime, "element lies in the conductor ideal");
    return eval_total(x);
  }

  // psi of a prime ideal of norm ell.
  cplx ideal_value(const IdealLatticeBasis& L) const {
    if (h_ == 1 || !L1_) {
      auto g = find_generator(ctx_, to_ideal(L));
      if (!g) throw Error(ErrorCode::InvalidArgument, "class number one but no generator found");
      return eval_total(*g);
    }
    const IdealLatticeBasis& L1 = *L1_;
    if (L.ell == L1.ell) {
      if (L.conjugate == L1.conjugate) return psi_L1_;
      return chi_(L.ell) / psi_L1_;
    }
    PrimitiveIdeal acc = to_ideal(L);
    cplx pw = 1.0;
    for (int k = 0; k < h_; ++k) {
      if (auto g = find_generator(ctx_, acc)) return eval_total(*g) / pw;
      acc = ideal_product(acc, to_ideal(L1));
      pw *= psi_L1_;
    }
    throw Error(ErrorCode::UnsupportedClassGroup, "ideal not reached by powers of the generator class");
  }

 private:
  void build_class_phases() {
    h_ = ctx_.class_number;
    reps_ = class_representatives(ctx_, opt_.search_bound, {ps_.p});
    if (h_ > 1) {
      // Find a prime ideal whose class generates the (assumed cyclic) group.
      for (i64 ell = 3; ell <= opt_.search_bound && !L1_; ell += 2) {
        if (ell == ps_.p || !is_prime(ell) || prime_kind(ctx_, ell) != SplitKind::Split) continue;
        IdealLatticeBasis L{ell, canonical_root(ctx_.D, ell), false};
        int order = 0;
        for (int k = 1; k <= h_; ++k) {
          if (find_generator(ctx_, ideal_power(ctx_, L, k))) { order = k; break; }
        }
        if (order == h_) L1_ = L;
      }
      if (!L1_) throw Error(ErrorCode::UnsupportedClassGroup, "no cyclic generator found; only cyclic class groups are supported");
      auto g = find_generator(ctx_, ideal_power(ctx_, *L1_, h_));
      cplx v = eval_total(*g);
      double arg = std::arg(v);
      if (arg < 0) arg += kTwoPi;
      psi_L1_ = std::polar(1.0, arg / h_) * unit_root(opt_.extension, h_);
    }
    phases_.clear();
    for (const auto& L : reps_) phases_.push_back(ideal_value(L));
  }

  FieldContext ctx_;
  PrimeSplitData ps_;
  DirichletCharacter chi_;
  int r_;
  HeckeOptions opt_;
  int h_ = 1;
  std::vector<IdealLatticeBasis> reps_;
  std::vector<cplx> phases_;
  std::optional<IdealLatticeBasis> L1_;
  cplx psi_L1_ = 1.0;
};

inline HeckeCharacter make_hecke(const FieldContext& ctx, const PrimeSplitData& ps, const DirichletCharacter& chi,
                                 int r, HeckeOptions opt = {}) {
  return HeckeCharacter(ctx, ps, chi, r, opt);
}

inline cplx eval_hecke_element(const HeckeCharacter& psi, const RingElement& x) { return psi.eval(x); }

struct CoefficientSeries {
  i64 n_max = 0;
  std::vector<cplx> values;  // values[n] = lambda(n); values[0] unused

  cplx operator[](i64 n) const { return values[static_cast<size_t>(n)]; }
};

// lambda(n) = (1/omega) sum over reps L of psi(L)^{-1} sum_{gamma in L, N gamma = n ell} psi(gamma).
inline CoefficientSeries lambda_coefficients(const HeckeCharacter& psi, i64 n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be positive");
  CoefficientSeries s;
  s.n_max = n_max;
  s.values.assign(static_cast<size_t>(n_max + 1), 0.0);
  const auto& ctx = psi.field();
  std::vector<cplx> acc(static_cast<size_t>(n_max + 1));
  for (size_t j = 0; j < psi.reps().size(); ++j) {
    const auto& L = psi.reps()[j];
    std::fill(acc.begin(), acc.end(), cplx(0.0));
    for_each_point(ctx, to_ideal(L), L.ell, n_max * L.ell,
                   [&](const RingElement& g, i64 N) { acc[static_cast<size_t>(N / L.ell)] += psi.eval_total(g); });
    const cplx w = 1.0 / (psi.class_phases()[j] * static_cast<double>(ctx.omega));
    for (i64 n = 1; n <= n_max; ++n) s.values[static_cast<size_t>(n)] += acc[static_cast<size_t>(n)] * w;
  }
  return s;
}

// lambda at a single n, by exact-norm search inside each representative.
inline cplx lambda_at(const HeckeCharacter& psi, i64 n) {
  const auto& ctx = psi.field();
  cplx total = 0;
  for (size_t j = 0; j < psi.reps().size(); ++j) {
    const auto& L = psi.reps()[j];
    const i64 target = n * L.ell;
    cplx acc = 0;
    for_each_point(ctx, to_ideal(L), target, target, [&](const RingElement& g, i64) { acc += psi.eval_total(g); });
    total += acc / psi.class_phases()[j];
  }
  return total / static_cast<double>(ctx.omega);
}

inline void write_csv(std::ostream& os, const CoefficientSeries& s) {
  os << "n,re,im\n";
  char buf[128];
  for (i64 n = 1; n <= s.n_max; ++n) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(n), s[n].real(), s[n].imag());
    os << buf;
  }
}

}  // namespace hecke
