#pragma once

// Both sides of the Voronoi identity for a class representative L:
//   S_L = sum_{gamma in L} psi(gamma) e(m N(gamma)/(q ell)) V(N(gamma)/(N ell))
//       = sum_{(c,f)} A(c,f) J(c,f).

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "hecke/gauss_sums.hpp"
#include "hecke/oscillatory.hpp"

namespace hecke {

struct VoronoiBudget {
  double kappa_max = 250.0;       // dual radius in units of the Bessel argument scale
  long min_nodes = 200;           // trapezoid nodes for the R-integral
  double nodes_per_kappa = 2.0;   // extra nodes per unit of kappa
  long max_terms = 5'000'000;     // BudgetExceeded beyond this many support points
  int shells = 20;                // kappa shells used by the tail estimate
  OracleCaps caps{};

  // A multiplier t stretches the radius by sqrt(t), which costs roughly t
  // times more dual terms.
  VoronoiBudget scaled(double t) const {
    VoronoiBudget b = *this;
    b.kappa_max *= std::sqrt(t);
    return b;
  }
};

struct VoronoiInstance {
  HeckeCharacter psi;
  i64 m = 1;
  i64 q = 1;
  double N = 40.0;
  SmoothBump V = standard_bump();
  IdealLatticeBasis rep;
  VoronoiBudget budget{};
  bool experimental_even_d = false;  // allow -D = 2 mod 4 with brute arithmetic parts
};

inline void validate(const VoronoiInstance& inst) {
  const auto& ctx = inst.psi.field();
  const i64 p = inst.psi.conductor().p;
  if (inst.q < 1 || gcd(inst.m, inst.q) != 1) throw Error(ErrorCode::NotCoprime, "gcd(m, q) must be 1");
  if (gcd(inst.rep.ell, p * inst.m) != 1) throw Error(ErrorCode::NotCoprime, "ell must be coprime to p*m");
  if (prime_kind(ctx, inst.rep.ell) != SplitKind::Split || canonical_root(ctx.D, inst.rep.ell) != inst.rep.d_ell) {
    throw Error(ErrorCode::InvalidArgument, "representative must be a split prime with its canonical root");
  }
  if (!(inst.N > 0.0)) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  const i64 r4 = mod(-ctx.D, 4);
  if (r4 == 1) throw Error(ErrorCode::UnsupportedCase, "-D = 1 mod 4 is out of scope for the dual side");
  if (r4 == 2 && !inst.experimental_even_d) {
    throw Error(ErrorCode::UnsupportedCase, "-D = 2 mod 4 requires the experimental flag");
  }
}

// sum_n lambda(n) e(nm/q) V(n/N)
inline cplx direct_sum(const VoronoiInstance& inst, const CoefficientSeries* table = nullptr) {
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::floor(inst.N * inst.V.a))) ;
  const i64 hi = static_cast<i64>(std::ceil(inst.N * inst.V.b));
  std::optional<CoefficientSeries> own;
  if (!table || table->n_max < hi) {
    own = lambda_coefficients(inst.psi, hi);
    table = &*own;
  }
  cplx s = 0;
  for (i64 n = lo; n <= hi; ++n) {
    const double v = inst.V(static_cast<double>(n) / inst.N);
    if (v == 0.0) continue;
    s += (*table)[n] * unit_root(mul_mod(mod(n, inst.q), mod(inst.m, inst.q), inst.q), inst.q) * v;
  }
  return s;
}

// S_L over gamma in the representative lattice.
inline cplx class_sum(const VoronoiInstance& inst) {
  const auto& ctx = inst.psi.field();
  const i64 l = inst.rep.ell;
  const double scale = inst.N * static_cast<double>(l);
  const i64 lo = static_cast<i64>(std::floor(scale * inst.V.a));
  const i64 hi = static_cast<i64>(std::ceil(scale * inst.V.b));
  const i64 ql = inst.q * l;
  cplx s = 0;
  for_each_point(ctx, to_ideal(inst.rep), lo, hi, [&](const RingElement& g, i64 n) {
    const double v = inst.V(static_cast<double>(n) / scale);
    if (v == 0.0) return;
    s += inst.psi.eval_total(g) * unit_root(mul_mod(mod(inst.m, ql), mod(n, ql), ql), ql) * v;
  });
  return s;
}

// (1/omega) sum over the character's representatives of S_L / psi(L).
inline cplx class_decomposition(const VoronoiInstance& inst) {
  cplx s = 0;
  for (size_t j = 0; j < inst.psi.reps().size(); ++j) {
    VoronoiInstance sub = inst;
    sub.rep = inst.psi.reps()[j];
    s += class_sum(sub) / inst.psi.class_phases()[j];
  }
  return s / static_cast<double>(inst.psi.field().omega);
}

inline ArithContext arith_context(const VoronoiInstance& inst) { return make_arith_context(inst.psi, inst.rep); }

// Bessel argument scale: kappa(c, f) = 2 pi sqrt(N (c^2 D + f^2)) / (q p sqrt(ell D)).
inline double dual_kappa(const VoronoiInstance& inst, double X) {
  const double D = static_cast<double>(inst.psi.field().D);
  const double p = static_cast<double>(inst.psi.conductor().p);
  return kTwoPi * std::sqrt(inst.N * X) / (static_cast<double>(inst.q) * p * std::sqrt(inst.rep.ell * D));
}

// J(c,f) = (N ell pi / sqrt D) e^{-i r phi} int V(R) J_r(kappa sqrt R) dR,
// phi = atan2(c sqrt D, f).
inline cplx analytic_part(const VoronoiInstance& inst, i64 c, i64 f) {
  if (c == 0 && f == 0) return 0.0;  // angular integral of e^{i r theta} vanishes for r >= 1
  const double D = static_cast<double>(inst.psi.field().D);
  const int r = inst.psi.weight();
  const double X = static_cast<double>(c) * c * D + static_cast<double>(f) * f;
  const double kappa = dual_kappa(inst, X);
  const double phi = std::atan2(static_cast<double>(c) * std::sqrt(D), static_cast<double>(f));
  const long n = inst.budget.min_nodes + static_cast<long>(inst.budget.nodes_per_kappa * kappa);
  const SmoothBump& V = inst.V;
  const double integral =
      trapezoid<double>([&](double R) { const double v = V(R); return v == 0.0 ? 0.0 : v * bessel_j(r, kappa * std::sqrt(R)); },
                        V.a, V.b, n);
  return inst.N * inst.rep.ell * kPi / std::sqrt(D) * std::polar(1.0, -r * phi) * integral;
}

inline cplx arith_value(const VoronoiInstance& inst, const ArithContext& ac, i64 c, i64 f) {
  if (mod(-ac.D, 4) == 2 && inst.q % 2 == 0) return arithmetic_part_brute(ac, {inst.q, inst.m, c, f}, inst.budget.caps);
  return arithmetic_part_closed(ac, {inst.q, inst.m, c, f});
}

struct DualTerm {
  i64 c = 0, f = 0;
  cplx arith = 0.0, analytic = 0.0;
};

struct DualSumResult {
  cplx value = 0.0;
  double tail_estimate = 0.0;
  long terms_used = 0;
  long support_violations = 0;
  double kappa_max = 0.0;
  std::vector<double> shell_mass;  // sum of |A J| per kappa shell
};

// Visit the support lattice of A inside c^2 D + f^2 <= Xmax, ordered by c then f.
template <class Fn>
void for_each_dual_point(const VoronoiInstance& inst, double Xmax, Fn&& fn) {
  const auto ac = arith_context(inst);
  const i64 p = ac.p, l = ac.ell, D = ac.D;
  const auto dv = arith_derived(ac, inst.q);
  const i64 g = dv.g;
  const i64 cmax = static_cast<i64>(std::floor(std::sqrt(Xmax / D)));
  const i64 cstep = dv.p_divides_q ? p : 1;
  const i64 P = p * l * g;
  for (i64 c = -cmax + mod(cmax, cstep); c <= cmax; c += cstep) {
    const double rest = Xmax - static_cast<double>(D) * c * c;
    if (rest < 0) continue;
    const i64 fmax = static_cast<i64>(std::floor(std::sqrt(rest)));
    // f = c d (mod p) or f = 0 (mod p); f = c d_ell (mod ell); f = 0 (mod g)
    const i64 fp = dv.p_divides_q ? 0 : mul_mod(mod(c, p), ac.d, p);
    const i64 fl = mul_mod(mod(c, l), ac.d_ell, l);
    i64 f0 = crt(fp, p, fl, l);
    f0 = crt(f0, p * l, 0, g);
    for (i64 f = -fmax + mod(f0 + fmax, P); f <= fmax; f += P) {
      if (c == 0 && f == 0) continue;
      fn(c, f);
    }
  }
}

inline DualSumResult dual_sum(const VoronoiInstance& inst, std::vector<DualTerm>* terms = nullptr) {
  validate(inst);
  const auto ac = arith_context(inst);
  const double D = static_cast<double>(ac.D);
  const double kmax = inst.budget.kappa_max;
  const double s = kmax * inst.q * ac.p * std::sqrt(ac.ell * D) / kTwoPi;
  const double Xmax = s * s / inst.N;
  DualSumResult res;
  res.kappa_max = kmax;
  res.shell_mass.assign(static_cast<size_t>(inst.budget.shells), 0.0);
  const double width = kmax / inst.budget.shells;
  for_each_dual_point(inst, Xmax, [&](i64 c, i64 f) {
    const cplx A = arith_value(inst, ac, c, f);
    if (std::abs(A) < 1e-300) return;
    if (++res.terms_used > inst.budget.max_terms) throw Error(ErrorCode::BudgetExceeded, "dual term budget exhausted");
    if (!arith_support_holds(ac, inst.q, c, f)) ++res.support_violations;
    const cplx J = analytic_part(inst, c, f);
    res.value += A * J;
    const double X = static_cast<double>(c) * c * D + static_cast<double>(f) * f;
    const size_t sh = std::min<size_t>(res.shell_mass.size() - 1, static_cast<size_t>(dual_kappa(inst, X) / width));
    res.shell_mass[sh] += std::abs(A * J);
    if (terms) terms->push_back({c, f, A, J});
  });
  // Geometric extrapolation of the shell masses beyond the radius.
  const size_t n = res.shell_mass.size();
  const double last = res.shell_mass[n - 1], prev = res.shell_mass[n - 2];
  if (last == 0.0) {
    res.tail_estimate = 0.0;
  } else {
    const double rho = prev > 0 ? last / prev : 1.0;
    res.tail_estimate = rho < 0.9 ? last * rho / (1.0 - rho) : 10.0 * last;
  }
  return res;
}

// One dual term computed before the polar reduction: the finite character
// sum times the plane Fourier integral
//   (N ell / (2 sqrt D)) int int e^{i r theta} V(R) e(-sqrt(N ell R)(c cos theta + f sin theta / sqrt D)/M) dR dtheta.
inline cplx poisson_oracle(const VoronoiInstance& inst, i64 c, i64 f, i64 cap = 4000) {
  const auto ac = arith_context(inst);
  const i64 M = inst.q * ac.p * ac.ell;
  if (M > cap) throw Error(ErrorCode::OracleTooLarge, "q*p*ell = " + std::to_string(M) + " exceeds the oracle cap");
  OracleCaps caps;
  caps.single_term = cap;
  const cplx A = arithmetic_part_brute(ac, {inst.q, inst.m, c, f}, caps);
  if (std::abs(A) < 1e-14) return 0.0;
  const double D = static_cast<double>(ac.D);
  const double Nl = inst.N * ac.ell;
  const int r = inst.psi.weight();
  const SmoothBump& V = inst.V;
  const double amp = std::sqrt(Nl * V.b) * std::sqrt(static_cast<double>(c) * c + static_cast<double>(f) * f / D) / M;
  const long nth = 64 + 4 * static_cast<long>(amp + r);
  const long nR = inst.budget.min_nodes + static_cast<long>(4.0 * amp);
  std::vector<double> ct(static_cast<size_t>(nth)), st(static_cast<size_t>(nth));
  std::vector<cplx> rot(static_cast<size_t>(nth));
  for (long k = 0; k < nth; ++k) {
    const double th = kTwoPi * k / nth;
    ct[static_cast<size_t>(k)] = std::cos(th);
    st[static_cast<size_t>(k)] = std::sin(th);
    rot[static_cast<size_t>(k)] = std::polar(1.0, r * th);
  }
  const double hR = (V.b - V.a) / nR;
  cplx total = 0.0;
  for (long i = 1; i < nR; ++i) {
    const double R = V.a + hR * i;
    const double v = V(R);
    if (v == 0.0) continue;
    const double rad = std::sqrt(Nl * R) / M;
    cplx ring = 0.0;
    for (long k = 0; k < nth; ++k) {
      const double ph = rad * (c * ct[static_cast<size_t>(k)] + f * st[static_cast<size_t>(k)] / std::sqrt(D));
      ring += rot[static_cast<size_t>(k)] * e_of(-ph);
    }
    total += v * ring;
  }
  const cplx J = Nl / (2.0 * std::sqrt(D)) * total * hR * (kTwoPi / nth);
  return A * J;
}

struct VerificationReport {
  cplx lhs = 0.0, rhs = 0.0;
  double abs_err = 0.0;
  std::optional<double> rel_err;
  long terms_used = 0;
  double truncation_tail_estimate = 0.0;
  double wall_time = 0.0;
};

inline VerificationReport make_report(cplx lhs, const DualSumResult& d, double seconds) {
  VerificationReport rep;
  rep.lhs = lhs;
  rep.rhs = d.value;
  rep.abs_err = std::abs(lhs - d.value);
  if (std::abs(lhs) > 10.0 * d.tail_estimate) rep.rel_err = rep.abs_err / std::abs(lhs);
  rep.terms_used = d.terms_used;
  rep.truncation_tail_estimate = d.tail_estimate;
  rep.wall_time = seconds;
  return rep;
}

inline VerificationReport verify(const VoronoiInstance& inst) {
  validate(inst);
  const auto t0 = std::chrono::steady_clock::now();
  const cplx lhs = class_sum(inst);
  const auto d = dual_sum(inst);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return make_report(lhs, d, dt);
}

// Class sum against the dual sum of the conjugate lattice: must disagree.
inline VerificationReport negative_control(const VoronoiInstance& inst) {
  validate(inst);
  const auto t0 = std::chrono::steady_clock::now();
  const cplx lhs = class_sum(inst);
  VoronoiInstance wrong = inst;
  wrong.rep = inst.rep.conj();
  const auto d = dual_sum(wrong);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return make_report(lhs, d, dt);
}

}  // namespace hecke
