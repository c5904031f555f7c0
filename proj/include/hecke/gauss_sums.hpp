#pragma once

// Quadratic Gauss sums g(a,b,c) and the arithmetic part A(c,f) of the
// dual sum, each with a brute-force reference.

#include <vector>

#include "hecke/characters.hpp"

namespace hecke {

// 1 if a = 1 mod 4, i if a = 3 mod 4.
inline cplx epsilon_factor(i64 a) {
  if ((a & 1) == 0) throw Error(ErrorCode::EvenInput, "epsilon factor of even " + std::to_string(a));
  return mod(a, 4) == 1 ? cplx(1, 0) : cplx(0, 1);
}

struct GaussSumParams {
  i64 a = 1, b = 0, c = 1;
};

inline std::vector<cplx> roots_of_unity(i64 n) {
  std::vector<cplx> r(static_cast<size_t>(n));
  for (i64 k = 0; k < n; ++k) r[static_cast<size_t>(k)] = unit_root(k, n);
  return r;
}

// sum_{beta mod c} e((a beta^2 + b beta)/c), with e(k/c) taken from roots.
inline cplx quadratic_gauss_brute(const GaussSumParams& g, const std::vector<cplx>& roots) {
  const i64 c = g.c, a = mod(g.a, c), b = mod(g.b, c);
  cplx s = 0;
  for (i64 beta = 0; beta < c; ++beta) {
    i64 k = mod128(static_cast<i128>(a) * beta * beta + static_cast<i128>(b) * beta, c);
    s += roots[static_cast<size_t>(k)];
  }
  return s;
}

inline cplx quadratic_gauss_brute(const GaussSumParams& g) {
  if (g.c < 1 || g.c > 1000000) throw Error(ErrorCode::OracleTooLarge, "brute Gauss sum needs 1 <= c <= 1e6");
  return quadratic_gauss_brute(g, roots_of_unity(g.c));
}

inline cplx quadratic_gauss_closed(const GaussSumParams& g) {
  const i64 c = g.c;
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  if (gcd(g.a, c) != 1) throw Error(ErrorCode::NotCoprime, "gcd(a, c) must be 1");
  const i64 a = mod(g.a, c), b = g.b;
  if (c & 1) {
    i64 k = mul_mod(inverse_mod(4 * a, c), mul_mod(mod(b, c), mod(b, c), c), c);
    return unit_root(-k, c) * static_cast<double>(kronecker_symbol(a, c)) * epsilon_factor(c) *
           std::sqrt(static_cast<double>(c));
  }
  if (c % 4 == 2) {
    if ((b & 1) == 0) return 0.0;
    const i64 c1 = c / 2;
    i64 k = mul_mod(inverse_mod(8 * a, c1), mul_mod(mod(b, c1), mod(b, c1), c1), c1);
    return 2.0 * unit_root(-k, c1) * static_cast<double>(kronecker_symbol(2 * a, c1)) * epsilon_factor(c1) *
           std::sqrt(static_cast<double>(c1));
  }
  if (b & 1) return 0.0;
  const i64 h = mod(b / 2, c);
  i64 k = mul_mod(inverse_mod(a, c), mul_mod(h, h, c), c);
  return unit_root(-k, c) * static_cast<double>(kronecker_symbol(c, a)) * cplx(1, 1) / epsilon_factor(a) *
         std::sqrt(static_cast<double>(c));
}

// Field, character and class representative data shared by every (q,m,c,f).
// d_ell is the membership root of the representative (already conjugated).
struct ArithContext {
  i64 D = 1;
  i64 p = 0;
  i64 d = 0;
  DirichletCharacter chi;
  i64 ell = 0;
  i64 d_ell = 0;
};

inline ArithContext make_arith_context(const HeckeCharacter& psi, const IdealLatticeBasis& L) {
  return {psi.field().D, psi.conductor().p, psi.conductor().d, psi.chi(), L.ell, L.root()};
}

struct ArithPartParams {
  i64 q = 1, m = 1, c = 0, f = 0;
};

// Derived quantities of the modulus q.
struct ArithDerived {
  i64 g, Dq, qD;
  bool p_divides_q;
};

inline ArithDerived arith_derived(const ArithContext& ac, i64 q) {
  i64 g = gcd(ac.D, q);
  return {g, ac.D / g, q / g, q % ac.p == 0};
}

inline void check_arith(const ArithContext& ac, const ArithPartParams& a, bool allow_even_d = false) {
  if (a.q < 1) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  if (gcd(a.m, a.q) != 1) throw Error(ErrorCode::NotCoprime, "gcd(m, q) must be 1");
  if (ac.ell == ac.p || mod(a.m, ac.ell) == 0) throw Error(ErrorCode::NotCoprime, "ell must be coprime to p*m");
  if (mod(-ac.D, 4) == 1) throw Error(ErrorCode::UnsupportedCase, "-D = 1 mod 4 has no dual-side formula");
  if (!allow_even_d && (ac.D % 2 == 0) && (a.q % 2 == 0)) {
    throw Error(ErrorCode::UnsupportedCase, "even D with even q is not covered by the closed forms");
  }
}

// e(-inv(u mod den) * X / den)
inline cplx arith_phase(i64 u, i128 X, i64 den) {
  i64 k = mul_mod(inverse_mod(mod(u, den), den), mod128(X, den), den);
  return unit_root(-k, den);
}

// Six-branch closed form keyed on (p | q, q mod 4).
inline cplx arithmetic_part_closed(const ArithContext& ac, const ArithPartParams& a) {
  check_arith(ac, a);
  const i64 p = ac.p, l = ac.ell, q = a.q, m = a.m, c = a.c, f = a.f, D = ac.D;
  const auto dv = arith_derived(ac, q);
  const i64 g = dv.g, Dq = dv.Dq, qD = dv.qD;
  const double sg = std::sqrt(static_cast<double>(g));
  const double ql = static_cast<double>(q) * static_cast<double>(l);
  if (mod128(static_cast<i128>(c) * ac.d_ell - f, l) != 0 || mod(f, g) != 0) return 0.0;

  cplx pre;
  i64 p2;  // p^2 moves from the inverse (case 1) to the denominator (case 2)
  i128 X;
  if (!dv.p_divides_q) {
    if (mod128(static_cast<i128>(c) * ac.d - f, p) != 0) return 0.0;
    const auto chib = conj(ac.chi);
    pre = ac.chi(mod128(-static_cast<i128>(q) * l, p)) * chib(c) / gauss_sum_tau(chib);
    p2 = 1;
    X = static_cast<i128>(c) * c * D + static_cast<i128>(f) * f;
    const i64 pp = p * p;
    if (q & 1) {
      return pre * sg / ql * static_cast<double>(kronecker_symbol(m, g) * kronecker_symbol(Dq, qD * l)) *
             epsilon_factor(q * l) * epsilon_factor(qD * l) * arith_phase(4 * m * pp * Dq, X, g * q * l);
    }
    if (q % 4 == 2) {
      if ((c & 1) == 0 || (f & 1) == 0) return 0.0;
      const i64 q1 = q / 2;
      return pre * 2.0 * sg / ql * static_cast<double>(kronecker_symbol(2 * m, g) * kronecker_symbol(Dq, (q1 / g) * l)) *
             epsilon_factor(q1 * l) * epsilon_factor((q1 / g) * l) * arith_phase(8 * m * pp * Dq, X, g * q1 * l);
    }
    if ((c & 1) || (f & 1)) return 0.0;
    return pre * sg / ql * static_cast<double>(kronecker_symbol(g, m) * kronecker_symbol(qD * l, Dq)) * cplx(0, 2) /
           (epsilon_factor(m) * epsilon_factor(m * Dq)) * arith_phase(m * pp * Dq, X, 4 * g * q * l);
  }
  if (mod(c, p) != 0 || mod(f, p) != 0) return 0.0;
  const i64 cp = c / p, fp = f / p;
  const auto chib = conj(ac.chi);
  pre = chib(mod128(-2 * static_cast<i128>(m) * ac.d, p)) * ac.chi(mod128(static_cast<i128>(cp) * ac.d - fp, p));
  p2 = p * p;
  X = static_cast<i128>(c) * c * D + static_cast<i128>(f) * f;
  if (q & 1) {
    return pre * sg / ql * static_cast<double>(kronecker_symbol(m, g) * kronecker_symbol(Dq, qD * l)) *
           epsilon_factor(q * l) * epsilon_factor(qD * l) * arith_phase(4 * m * Dq, X, g * q * p2 * l);
  }
  if (q % 4 == 2) {
    if ((c & 1) == 0 || (f & 1) == 0) return 0.0;
    const i64 q1 = q / 2;
    return pre * 2.0 * sg / ql * static_cast<double>(kronecker_symbol(2 * m, g) * kronecker_symbol(Dq, (q1 / g) * l)) *
           epsilon_factor(q1 * l) * epsilon_factor((q1 / g) * l) * arith_phase(8 * m * Dq, X, g * q1 * p2 * l);
  }
  if ((c & 1) || (f & 1)) return 0.0;
  return pre * sg / ql * static_cast<double>(kronecker_symbol(g, m) * kronecker_symbol(qD * l, Dq)) * cplx(0, 2) /
         (epsilon_factor(m) * epsilon_factor(m * Dq)) * arith_phase(m * Dq, X, 4 * g * q * p2 * l);
}

struct OracleCaps {
  i64 single_term = 4000;  // cap on q*p*ell for one-term oracles
  i64 grid = 4000;         // cap on q*p*ell for the grid oracle
};

// Summand of the finite character sum at (beta, gamma) mod M = q p ell,
// before the additive twist by (c beta + f gamma)/M. The ell-membership
// detector (1/ell) sum_xi e(xi (beta + gamma d_ell)/ell) is tabulated by residue.
class ArithKernel {
 public:
  ArithKernel(const ArithContext& ac, i64 q, i64 m) : ac_(ac), q_(q), m_(m), M_(q * ac.p * ac.ell) {
    const i64 l = ac.ell;
    detector_.assign(static_cast<size_t>(l), 0.0);
    for (i64 res = 0; res < l; ++res) {
      cplx s = 0;
      for (i64 xi = 0; xi < l; ++xi) s += unit_root(xi * res, l);
      detector_[static_cast<size_t>(res)] = s / static_cast<double>(l);
    }
    qroots_ = roots_of_unity(q * l);
  }
  i64 modulus() const { return M_; }
  cplx operator()(i64 beta, i64 gamma) const {
    const i64 l = ac_.ell;
    cplx det = detector_[static_cast<size_t>(mod128(beta + static_cast<i128>(gamma) * ac_.d_ell, l))];
    if (std::abs(det) < 0.5) return 0.0;
    cplx ch = ac_.chi(mod128(beta + static_cast<i128>(gamma) * ac_.d, ac_.p));
    if (ch == 0.0) return 0.0;
    i64 k = mod128(static_cast<i128>(m_) * (static_cast<i128>(beta) * beta + static_cast<i128>(gamma) * gamma * ac_.D),
                   q_ * l);
    return ch * det * qroots_[static_cast<size_t>(k)];
  }

 private:
  ArithContext ac_;
  i64 q_, m_, M_;
  std::vector<cplx> detector_;
  std::vector<cplx> qroots_;
};

// Literal finite sum (1/M^2) sum_{beta,gamma mod M} kernel * e((c beta + f gamma)/M).
inline cplx arithmetic_part_brute(const ArithContext& ac, const ArithPartParams& a, OracleCaps caps = {}) {
  check_arith(ac, a, true);
  const i64 M = a.q * ac.p * ac.ell;
  if (M > caps.single_term) throw Error(ErrorCode::OracleTooLarge, "q*p*ell = " + std::to_string(M) + " exceeds the cap");
  ArithKernel W(ac, a.q, a.m);
  const auto roots = roots_of_unity(M);
  const i64 c = mod(a.c, M), f = mod(a.f, M);
  cplx s = 0;
  for (i64 beta = 0; beta < M; ++beta) {
    for (i64 gamma = 0; gamma < M; ++gamma) {
      cplx w = W(beta, gamma);
      if (w == 0.0) continue;
      s += w * roots[static_cast<size_t>(mod128(static_cast<i128>(c) * beta + static_cast<i128>(f) * gamma, M))];
    }
  }
  return s / (static_cast<double>(M) * static_cast<double>(M));
}

// Brute values on the product grid cs x fs by a separable transform over
// the points of the ell-lattice only. Result is row-major [i_c][i_f].
inline std::vector<cplx> arithmetic_part_brute_grid(const ArithContext& ac, i64 q, i64 m, const std::vector<i64>& cs,
                                                    const std::vector<i64>& fs, OracleCaps caps = {}) {
  check_arith(ac, {q, m, 0, 0}, true);
  const i64 l = ac.ell, M = q * ac.p * l, T = M / l;
  if (M > caps.grid) throw Error(ErrorCode::OracleTooLarge, "q*p*ell = " + std::to_string(M) + " exceeds the grid cap");
  ArithKernel W(ac, q, m);
  const auto roots = roots_of_unity(M);
  // beta = -gamma d_ell + ell t runs over the residues with ell | beta + gamma d_ell.
  std::vector<cplx> Tg(static_cast<size_t>(M) * cs.size(), 0.0);
  for (i64 gamma = 0; gamma < M; ++gamma) {
    const i64 b0 = mod128(-static_cast<i128>(gamma) * ac.d_ell, l);
    for (i64 t = 0; t < T; ++t) {
      const i64 beta = b0 + l * t;
      cplx w = W(beta, gamma);
      if (w == 0.0) continue;
      for (size_t ic = 0; ic < cs.size(); ++ic) {
        Tg[static_cast<size_t>(gamma) * cs.size() + ic] +=
            w * roots[static_cast<size_t>(mod128(static_cast<i128>(cs[ic]) * beta, M))];
      }
    }
  }
  std::vector<cplx> out(cs.size() * fs.size(), 0.0);
  const double norm = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
  for (size_t ic = 0; ic < cs.size(); ++ic) {
    for (size_t jf = 0; jf < fs.size(); ++jf) {
      cplx s = 0;
      for (i64 gamma = 0; gamma < M; ++gamma) {
        s += Tg[static_cast<size_t>(gamma) * cs.size() + ic] *
             roots[static_cast<size_t>(mod128(static_cast<i128>(fs[jf]) * gamma, M))];
      }
      out[ic * fs.size() + jf] = s * norm;
    }
  }
  return out;
}

// Nonzero A forces ell p g | c^2 D + f^2 (p not dividing q) or
// ell p^2 g | c^2 D + f^2 (p dividing q).
inline bool arith_support_holds(const ArithContext& ac, i64 q, i64 c, i64 f) {
  const auto dv = arith_derived(ac, q);
  i128 X = static_cast<i128>(c) * c * ac.D + static_cast<i128>(f) * f;
  i64 need = ac.ell * ac.p * dv.g * (dv.p_divides_q ? ac.p : 1);
  return X % need == 0;
}

}  // namespace hecke
