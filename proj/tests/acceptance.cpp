// One line per acceptance criterion; nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hecke/checks.hpp"
#include "hecke/suites.hpp"

using namespace hecke;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome gauss() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = gauss_sweep(200, 1e-9, [](const GaussRow&) {});
  const double dt = seconds_since(t0);
  return {s.ok() && dt <= 60.0, std::to_string(s.pass) + " tuples, max diff " + num(s.max_error) + ", " + num(dt) + " s"};
}

Outcome arith() {
  std::set<std::string> branches;
  Summary total;
  for (const auto& c : standard_arith_cases()) {
    const auto s = arith_sweep(c, 20, 1e-8, {}, [&](const ArithRow& r) { branches.insert(r.branch); });
    total.pass += s.pass;
    total.fail += s.fail;
    total.max_error = std::max(total.max_error, s.max_error);
  }
  return {total.ok() && branches.size() == 9,
          std::to_string(total.pass) + " points over " + std::to_string(branches.size()) + "/9 branches, max diff " +
              num(total.max_error)};
}

Outcome decomposition() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  int cases = 0;
  for (const CharacterSpec& cs : {CharacterSpec{1, 13, 2, 2}, CharacterSpec{5, 3, 1, 1}}) {
    const auto psi = build_character(cs);
    for (double N : {20.0, 50.0})
      for (i64 q : {1, 3, 4}) {
        const auto inst = make_instance({cs, psi.reps()[0].ell, q, 1, N});
        worst = std::max(worst, std::abs(direct_sum(inst) - class_decomposition(inst)));
        ++cases;
      }
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-10 && dt <= 30.0, std::to_string(cases) + " cases, max diff " + num(worst) + ", " + num(dt) + " s"};
}

Outcome voronoi() {
  const auto t0 = std::chrono::steady_clock::now();
  int n = 0, base_ok = 0, tight_ok = 0, terms_ok = 0, control_ok = 0;
  bool p_divides_q = false, p_divides_m = false, p_coprime = false;
  double worst_rel = 0, worst_tight = 0, worst_term = 0, weakest_control = 1e300;
  for (const auto& vc : standard_voronoi_cases()) {
    ++n;
    const auto inst = make_instance(vc);
    const i64 p = inst.psi.conductor().p;
    p_divides_q |= vc.q % p == 0;
    p_divides_m |= vc.m % p == 0;
    p_coprime |= vc.q % p != 0 && vc.m % p != 0;

    const auto base = verify(inst);
    const double rel = base.rel_err.value_or(1e300);
    worst_rel = std::max(worst_rel, rel);
    base_ok += rel <= 1e-4;

    const auto tight = verify(make_instance(vc, 10.0));
    const double trel = tight.rel_err.value_or(1e300);
    worst_tight = std::max(worst_tight, trel);
    tight_ok += trel <= 1e-6;

    const auto checks = term_checks(inst, 20);
    bool all = checks.size() == 20;
    for (const auto& t : checks) {
      worst_term = std::max(worst_term, t.diff);
      all = all && t.diff <= 1e-8;
    }
    terms_ok += all;

    const auto ctl = negative_control(inst);
    const double crel = ctl.abs_err / std::abs(ctl.lhs);
    weakest_control = std::min(weakest_control, crel);
    control_ok += crel >= 0.1;
  }
  const double dt = seconds_since(t0);
  const bool spans = p_divides_q && p_divides_m && p_coprime;
  const bool pass = n >= 6 && base_ok == n && tight_ok >= 6 && terms_ok == n && control_ok == n && spans && dt <= 600.0;
  std::ostringstream os;
  os << n << " instances, rel err <= " << num(worst_rel) << " (" << base_ok << " ok), 10x budget <= " << num(worst_tight)
     << " (" << tight_ok << " ok), term diff <= " << num(worst_term) << ", control >= " << num(weakest_control) << ", "
     << num(dt) << " s";
  return {pass, os.str()};
}

Outcome delta() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = delta_sweep(50, {5, 10, 20, 50}, 1e-9, [](const DeltaRow&) {});
  const double dt = seconds_since(t0);
  return {s.ok() && dt <= 10.0, std::to_string(s.pass) + " values, max diff " + num(s.max_error) + ", " + num(dt) + " s"};
}

Outcome stationary() {
  double dagger = 0;
  for (const auto& r : dagger_family())
    if (r.family == "dagger") dagger = std::max(dagger, r.ratio);
  const auto decay = decay_family();
  std::map<std::string, bool> decay_ok;
  for (const auto& r : decay) decay_ok[r.family] = (decay_ok.count(r.family) ? decay_ok[r.family] : true) && r.pass();
  bool decays = decay_ok.size() == 3;
  for (const auto& [k, ok] : decay_ok) decays = decays && ok;
  double poisson = 0;
  const auto pf = poisson_family(20240101, 50);
  for (const auto& r : pf) poisson = std::max(poisson, r.ratio);
  const bool pass = dagger <= 10.0 && decays && pf.size() == 50 && poisson <= 1e-8;
  return {pass, "dagger constant " + num(dagger) + ", decay j=1..3 " + (decays ? "observed" : "missing") +
                    " (fit exponent " + num(decay_exponent(decay)) + "), Poisson max diff " + num(poisson)};
}

Outcome lvalues() {
  double worst = 0, regen = 0;
  for (const CharacterSpec& cs : {CharacterSpec{1, 13, 2, 2}, CharacterSpec{5, 3, 1, 1}}) {
    const auto psi = build_character(cs);
    const auto lam = lambda_coefficients(psi, 200000);
    for (cplx s : {cplx(2, 0), cplx(2, 5)}) worst = std::max(worst, lvalue_check(psi, lam, s, 200000, 200000).rel_diff);
    regen = std::max(regen, regeneration_check(psi, lam, 500).first);
  }
  return {worst <= 1e-6 && regen <= 1e-10, "series vs Euler rel diff " + num(worst) + ", regeneration diff " + num(regen)};
}

std::string run_cli(const std::string& args, int* code) {
  FILE* p = popen((std::string(HECKEVOR_BIN) + " " + args + " 2>&1").c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  *code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

// Every report the tool writes, twice with the same seed, plus an in-process
// sweep rendered twice.
Outcome determinism() {
  const std::vector<std::string> commands{
      "field-info --D 5",     "coeffs --nmax 500", "verify-gauss --cmax 200", "verify-arith",
      "verify-voronoi --grid", "delta-check",      "osc-check",               "lvalue",
      "scan --steps 4 --t-max 20"};
  int same = 0, clean = 0;
  std::string failed;
  for (const auto& c : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = run_cli(c, &c1), b = run_cli(c, &c2);
    if (a == b && !a.empty()) {
      ++same;
    } else {
      failed += " [" + c + "]";
    }
    clean += c1 == 0 && c2 == 0;
  }
  auto render = [] {
    std::ostringstream os;
    CsvReport r(os, "osc-check", {{"seed", "20240101"}}, {"family", "ratio"});
    for (const auto& row : poisson_family(20240101, 50)) {
      r.cell(row.family).cell(row.ratio);
      r.end_row();
    }
    return os.str();
  };
  const bool inproc = render() == render();
  const int n = static_cast<int>(commands.size());
  return {same == n && clean == n && inproc,
          std::to_string(same) + "/" + std::to_string(n) + " reports identical, " + std::to_string(clean) + "/" +
              std::to_string(n) + " exited 0, in-process " + (inproc ? "identical" : "differs") + failed};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{gauss, arith, decomposition, voronoi,
                                                       delta, stationary, lvalues, determinism};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
