// heckevor: batch verification driver.
//
// Exit codes: 0 all checks within tolerance, 2 tolerance failure,
// 1 usage or configuration error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hecke/checks.hpp"
#include "hecke/suites.hpp"

using namespace hecke;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string format;  // empty: subcommand default
  std::string out;
  std::uint64_t seed = 20240101;
  bool timing = false;
  std::string config;
};

struct Budgets {
  i64 oracle_cap = 4000;
  double budget = 1.0;
  long max_terms = 5'000'000;
  double quad_tol = 1e-12;
};

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt_int(i64 v) { return std::to_string(v); }

ConfigEcho base_echo(const std::string& cmd, const Globals& g) {
  return {{"command", cmd}, {"seed", std::to_string(g.seed)}};
}

void add_timing(ConfigEcho& extra, const Globals& g, const Timer& t) {
  if (g.timing) extra.push_back({"wall_time", fmt_num(t.seconds())});
}

int exit_for(const Summary& s) { return s.ok() ? 0 : 2; }

void character_options(CLI::App* sc, CharacterSpec& cs) {
  sc->add_option("--D", cs.D, "field parameter, K = Q(sqrt(-D))")->capture_default_str();
  sc->add_option("--p", cs.p, "conductor prime")->capture_default_str();
  sc->add_option("--chi", cs.chi, "Dirichlet character index k (0 picks the first admissible)")->capture_default_str();
  sc->add_option("--r", cs.r, "weight (0 picks the first admissible)")->capture_default_str();
  sc->add_option("--ext", cs.extension, "extension index to the class group")->capture_default_str();
}

void echo_character(ConfigEcho& e, const HeckeCharacter& psi) {
  e.push_back({"D", fmt_int(psi.field().D)});
  e.push_back({"p", fmt_int(psi.conductor().p)});
  e.push_back({"chi", fmt_int(psi.chi().k)});
  e.push_back({"r", fmt_int(psi.weight())});
  e.push_back({"ext", fmt_int(psi.extension())});
}

// Flat key=value lines become --key=value unless the flag is already on the
// command line or its environment variable is set.
std::vector<std::string> config_args(const std::string& path, const std::vector<std::string>& argv,
                                     const std::map<std::string, std::string>& env_of) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::set<std::string> given;
  for (const auto& a : argv) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    if (key == "config" || given.count(key)) continue;
    auto env = env_of.find(key);
    if (env != env_of.end() && std::getenv(env->second.c_str())) continue;
    out.push_back("--" + key + "=" + val);
  }
  return out;
}

// ---- subcommands ----

int run_field_info(const Globals& g, i64 D, i64 bound) {
  Timer t;
  const FieldContext ctx = make_field(D, bound);
  ConfigEcho cfg = base_echo("field-info", g);
  cfg.push_back({"D", fmt_int(D)});
  cfg.push_back({"search_bound", fmt_int(bound)});
  // The reps must land in distinct classes and cover them all.
  std::set<Form> seen;
  for (const auto& L : ctx.class_reps) seen.insert(class_form(ctx, L));
  Summary s;
  s.record(static_cast<i64>(seen.size()) == ctx.class_number &&
               static_cast<i64>(ctx.reduced_forms.size()) == ctx.class_number,
           0.0);
  Sink sink(g.out);
  ConfigEcho extra;
  add_timing(extra, g, t);
  if (g.format == "csv") {
    CsvReport csv(sink.os(), "field-info", cfg, {"kind", "a", "b", "c"});
    for (const auto& f : ctx.reduced_forms) csv.cell(std::string("form")).cell(f.a).cell(f.b).cell(f.c).end_row();
    for (const auto& L : ctx.class_reps) {
      csv.cell(std::string("rep")).cell(L.ell).cell(L.root()).cell(std::string("")).end_row();
    }
    extra.insert(extra.begin(), {{"disc", fmt_int(ctx.disc)}, {"class_number", fmt_int(ctx.class_number)},
                                 {"omega", fmt_int(ctx.omega)}});
    csv.footer(s, extra);
  } else {
    ojson j = json_envelope("field-info", cfg);
    ojson r;
    r["D"] = ctx.D;
    r["disc"] = ctx.disc;
    r["ring_type"] = ctx.ring_type == RingType::RT1 ? "RT1" : "RT23";
    r["omega"] = ctx.omega;
    r["class_number"] = ctx.class_number;
    r["reduced_forms"] = ojson::array();
    for (const auto& f : ctx.reduced_forms) r["reduced_forms"].push_back({f.a, f.b, f.c});
    r["class_reps"] = ojson::array();
    for (const auto& L : ctx.class_reps) r["class_reps"].push_back({{"ell", L.ell}, {"d_ell", L.root()}});
    r["tol"] = 0;
    r["pass"] = s.ok();
    j["results"].push_back(r);
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
  }
  return exit_for(s);
}

int run_coeffs(const Globals& g, const CharacterSpec& cs, i64 nmax, double tol) {
  Timer t;
  const HeckeCharacter psi = build_character(cs);
  const auto lam = lambda_coefficients(psi, nmax);
  // lambda(1) = 1 and lambda(ab) = lambda(a) lambda(b) for coprime a, b.
  Summary s;
  s.record(std::abs(lam[1] - 1.0) <= tol, std::abs(lam[1] - 1.0));
  for (i64 a = 2; a * 2 <= nmax && a <= 200; ++a) {
    for (i64 b = 2; a * b <= nmax && b <= 200; ++b) {
      if (gcd(a, b) != 1) continue;
      const double d = std::abs(lam[a * b] - lam[a] * lam[b]);
      s.record(d <= tol, d);
    }
  }
  ConfigEcho cfg = base_echo("coeffs", g);
  echo_character(cfg, psi);
  cfg.push_back({"nmax", fmt_int(nmax)});
  cfg.push_back({"tol", fmt_num(tol)});
  Sink sink(g.out);
  ConfigEcho extra;
  add_timing(extra, g, t);
  if (g.format == "json") {
    ojson j = json_envelope("coeffs", cfg);
    for (i64 n = 1; n <= nmax; ++n) j["results"].push_back({{"n", n}, {"re", lam[n].real()}, {"im", lam[n].imag()}});
    j["multiplicativity_tol"] = tol;
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
  } else {
    CsvReport csv(sink.os(), "coeffs", cfg, {"n", "re", "im"});
    for (i64 n = 1; n <= nmax; ++n) csv.cell(n).cell(lam[n]).end_row();
    extra.insert(extra.begin(), {"multiplicativity_tol", fmt_num(tol)});
    csv.footer(s, extra);
  }
  return exit_for(s);
}

int run_verify_gauss(const Globals& g, i64 cmax, double tol, const std::string& detail) {
  Timer t;
  ConfigEcho cfg = base_echo("verify-gauss", g);
  cfg.push_back({"cmax", fmt_int(cmax)});
  cfg.push_back({"tol", fmt_num(tol)});
  cfg.push_back({"detail", detail});
  Sink sink(g.out);
  ConfigEcho extra;
  const bool per_tuple = detail == "tuple";
  if (g.format == "json") {
    ojson j = json_envelope("verify-gauss", cfg);
    std::map<i64, std::pair<long, double>> per_c;
    Summary s = gauss_sweep(cmax, tol, [&](const GaussRow& r) {
      if (per_tuple) {
        j["results"].push_back({{"a", r.a}, {"b", r.b}, {"c", r.c}, {"closed", complex_json(r.closed)},
                                {"brute", complex_json(r.brute)}, {"diff", r.diff}, {"tol", tol}});
      } else {
        auto& pc = per_c[r.c];
        pc.first += 1;
        pc.second = std::max(pc.second, r.diff);
      }
    });
    for (const auto& [c, v] : per_c) {
      j["results"].push_back({{"c", c}, {"tuples", v.first}, {"max_diff", v.second}, {"tol", tol}});
    }
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
    return exit_for(s);
  }
  std::unique_ptr<CsvReport> csv;
  if (per_tuple) {
    csv = std::make_unique<CsvReport>(sink.os(), "verify-gauss", cfg,
                                      std::vector<std::string>{"a", "b", "c", "closed_re", "closed_im", "brute_re",
                                                               "brute_im", "diff", "tol"});
  } else {
    csv = std::make_unique<CsvReport>(sink.os(), "verify-gauss", cfg,
                                      std::vector<std::string>{"c", "tuples", "max_diff", "tol"});
  }
  i64 cur = 0;
  long count = 0;
  double worst = 0.0;
  auto flush = [&] {
    if (cur > 0) csv->cell(cur).cell(static_cast<i64>(count)).cell(worst).cell(tol).end_row();
  };
  Summary s = gauss_sweep(cmax, tol, [&](const GaussRow& r) {
    if (per_tuple) {
      csv->cell(r.a).cell(r.b).cell(r.c).cell(r.closed).cell(r.brute).cell(r.diff).cell(tol).end_row();
      return;
    }
    if (r.c != cur) {
      flush();
      cur = r.c;
      count = 0;
      worst = 0.0;
    }
    ++count;
    worst = std::max(worst, r.diff);
  });
  if (!per_tuple) flush();
  add_timing(extra, g, t);
  csv->footer(s, extra);
  return exit_for(s);
}

int run_verify_arith(const Globals& g, const std::string& set, const CharacterSpec& cs, i64 ell,
                     const std::vector<i64>& qs, const std::vector<i64>& ms, i64 cmax, double tol, const Budgets& b) {
  Timer t;
  std::vector<ArithCase> cases;
  if (set == "standard") {
    cases = standard_arith_cases();
  } else {
    cases.push_back({cs, ell, qs, ms});
  }
  OracleCaps caps;
  caps.single_term = caps.grid = b.oracle_cap;
  ConfigEcho cfg = base_echo("verify-arith", g);
  cfg.push_back({"set", set});
  if (set != "standard") {
    cfg.push_back({"D", fmt_int(cs.D)});
    cfg.push_back({"p", fmt_int(cs.p)});
    cfg.push_back({"ell", fmt_int(ell)});
  }
  cfg.push_back({"cmax", fmt_int(cmax)});
  cfg.push_back({"tol", fmt_num(tol)});
  cfg.push_back({"oracle_cap", fmt_int(b.oracle_cap)});
  Sink sink(g.out);
  Summary total;
  std::set<std::string> branches;
  auto merge = [&](const Summary& s) {
    total.pass += s.pass;
    total.fail += s.fail;
    total.max_error = std::max(total.max_error, s.max_error);
  };
  if (g.format == "json") {
    ojson j = json_envelope("verify-arith", cfg);
    for (const auto& c : cases) {
      merge(arith_sweep(c, cmax, tol, caps, [&](const ArithRow& r) {
        branches.insert(r.branch);
        j["results"].push_back({{"D", r.D}, {"p", r.p}, {"ell", r.ell}, {"q", r.q}, {"m", r.m}, {"c", r.c},
                                {"f", r.f}, {"branch", r.branch}, {"closed", complex_json(r.closed)},
                                {"brute", complex_json(r.brute)}, {"diff", r.diff}, {"tol", tol}});
      }));
    }
    j["branches"] = branches;
    json_finish(j, total);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
    return exit_for(total);
  }
  CsvReport csv(sink.os(), "verify-arith", cfg,
                {"D", "p", "ell", "q", "m", "c", "f", "branch", "closed_re", "closed_im", "brute_re", "brute_im", "diff",
                 "tol"});
  for (const auto& c : cases) {
    merge(arith_sweep(c, cmax, tol, caps, [&](const ArithRow& r) {
      branches.insert(r.branch);
      csv.cell(r.D).cell(r.p).cell(r.ell).cell(r.q).cell(r.m).cell(r.c).cell(r.f).cell(r.branch).cell(r.closed)
          .cell(r.brute).cell(r.diff).cell(tol).end_row();
    }));
  }
  std::string bl;
  for (const auto& br : branches) bl += (bl.empty() ? "" : ";") + br;
  ConfigEcho extra{{"branches", bl}};
  add_timing(extra, g, t);
  csv.footer(total, extra);
  return exit_for(total);
}

ojson report_json(const VerificationReport& r, double tol, bool timing) {
  ojson j;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err ? ojson(*r.rel_err) : ojson(nullptr);
  j["rel_tol"] = tol;
  j["terms_used"] = r.terms_used;
  j["truncation_tail_estimate"] = r.truncation_tail_estimate;
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

struct VoronoiArgs {
  CharacterSpec cs{1, 13, 2, 2};
  i64 ell = 5, q = 3, m = 1;
  double N = 40.0;
  double tol = 1e-4;
  double term_tol = 1e-8;
  int term_points = 20;
  bool grid = false;
  bool negative = false;
  bool experimental_even_d = false;
};

int run_verify_voronoi(const Globals& g, const VoronoiArgs& a, const Budgets& b) {
  Timer t;
  auto configure = [&](VoronoiInstance& inst) {
    inst.budget = VoronoiBudget{}.scaled(b.budget);
    inst.budget.max_terms = b.max_terms;
    inst.budget.caps.single_term = inst.budget.caps.grid = b.oracle_cap;
    inst.experimental_even_d = a.experimental_even_d;
  };
  ConfigEcho cfg = base_echo("verify-voronoi", g);
  cfg.push_back({"budget", fmt_num(b.budget)});
  cfg.push_back({"max_terms", std::to_string(b.max_terms)});
  cfg.push_back({"oracle_cap", fmt_int(b.oracle_cap)});
  cfg.push_back({"rel_tol", fmt_num(a.tol)});
  cfg.push_back({"term_tol", fmt_num(a.term_tol)});
  Sink sink(g.out);
  Summary s;
  if (a.grid) {
    cfg.push_back({"grid", "standard"});
    CsvReport csv(sink.os(), "verify-voronoi", cfg,
                  {"D", "p", "chi", "r", "ell", "q", "m", "N", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err",
                   "rel_err", "rel_tol", "tail", "terms", "term_max_diff", "term_tol", "pass"});
    for (const auto& vc : standard_voronoi_cases()) {
      VoronoiInstance inst = make_instance(vc);
      configure(inst);
      const auto rep = verify(inst);
      double tmax = 0.0;
      for (const auto& tc : term_checks(inst, static_cast<size_t>(a.term_points))) tmax = std::max(tmax, tc.diff);
      const bool ok = voronoi_passes(rep, a.tol) && tmax <= a.term_tol;
      s.record(ok, rep.rel_err.value_or(0.0));
      csv.cell(vc.chi.D).cell(vc.chi.p).cell(inst.psi.chi().k).cell(inst.psi.weight()).cell(vc.ell).cell(vc.q)
          .cell(vc.m).cell(vc.N).cell(rep.lhs).cell(rep.rhs).cell(rep.abs_err)
          .cell(rep.rel_err ? fmt_num(*rep.rel_err) : std::string(""))
          .cell(a.tol).cell(rep.truncation_tail_estimate).cell(static_cast<i64>(rep.terms_used)).cell(tmax)
          .cell(a.term_tol).cell(ok).end_row();
      sink.os().flush();
    }
    ConfigEcho extra;
    add_timing(extra, g, t);
    csv.footer(s, extra);
    return exit_for(s);
  }
  VoronoiInstance inst = make_instance({a.cs, a.ell, a.q, a.m, a.N});
  configure(inst);
  echo_character(cfg, inst.psi);
  cfg.push_back({"ell", fmt_int(a.ell)});
  cfg.push_back({"q", fmt_int(a.q)});
  cfg.push_back({"m", fmt_int(a.m)});
  cfg.push_back({"N", fmt_num(a.N)});
  const auto rep = verify(inst);
  const bool ok = voronoi_passes(rep, a.tol);
  s.record(ok, rep.rel_err.value_or(0.0));
  ojson j = json_envelope("verify-voronoi", cfg);
  ojson r = report_json(rep, a.tol, g.timing);
  r["pass"] = ok;
  ojson terms = ojson::array();
  for (const auto& tc : term_checks(inst, static_cast<size_t>(a.term_points))) {
    const bool tok = tc.diff <= a.term_tol;
    s.record(tok, 0.0);
    terms.push_back({{"c", tc.c}, {"f", tc.f}, {"polar", complex_json(tc.polar)}, {"oracle", complex_json(tc.oracle)},
                     {"diff", tc.diff}, {"tol", a.term_tol}, {"pass", tok}});
  }
  r["term_checks"] = terms;
  if (a.negative) {
    const auto neg = negative_control(inst);
    const double rel = neg.abs_err / std::abs(neg.lhs);
    ojson nj = report_json(neg, a.tol, g.timing);
    nj["min_rel_err"] = 0.1;
    nj["pass"] = rel >= 0.1;
    s.record(rel >= 0.1, 0.0);
    r["negative_control"] = nj;
  }
  j["results"].push_back(r);
  json_finish(j, s);
  if (g.timing) j["wall_time"] = t.seconds();
  sink.os() << j.dump(2) << "\n";
  return exit_for(s);
}

int run_delta_check(const Globals& g, i64 nmax, const std::vector<double>& Qs, double tol) {
  Timer t;
  ConfigEcho cfg = base_echo("delta-check", g);
  cfg.push_back({"nmax", fmt_int(nmax)});
  std::string ql;
  for (double q : Qs) ql += (ql.empty() ? "" : ";") + fmt_num(q);
  cfg.push_back({"Q", ql});
  cfg.push_back({"tol", fmt_num(tol)});
  Sink sink(g.out);
  ConfigEcho extra;
  if (g.format == "json") {
    ojson j = json_envelope("delta-check", cfg);
    Summary s = delta_sweep(nmax, Qs, tol, [&](const DeltaRow& r) {
      j["results"].push_back({{"n", r.n}, {"Q", r.Q}, {"value", r.value}, {"diff", r.diff}, {"tol", tol}});
    });
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
    return exit_for(s);
  }
  CsvReport csv(sink.os(), "delta-check", cfg, {"n", "Q", "value", "diff", "tol"});
  Summary s = delta_sweep(nmax, Qs, tol,
                          [&](const DeltaRow& r) { csv.cell(r.n).cell(r.Q).cell(r.value).cell(r.diff).cell(tol).end_row(); });
  add_timing(extra, g, t);
  csv.footer(s, extra);
  return exit_for(s);
}

int run_osc_check(const Globals& g, const std::string& family, int count, double poisson_tol) {
  Timer t;
  std::vector<OscRow> rows;
  auto want = [&](const char* f) { return family == "all" || family == f; };
  double exponent = 0.0;
  if (want("dagger")) {
    auto r = dagger_family();
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("stationary")) {
    auto r = stationary_family();
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("decay")) {
    auto r = decay_family();
    exponent = decay_exponent(r);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("poisson")) {
    auto r = poisson_family(g.seed, count, poisson_tol);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("double")) {
    auto r = double_family();
    rows.insert(rows.end(), r.begin(), r.end());
  }
  ConfigEcho cfg = base_echo("osc-check", g);
  cfg.push_back({"family", family});
  cfg.push_back({"count", std::to_string(count)});
  cfg.push_back({"poisson_tol", fmt_num(poisson_tol)});
  Summary s;
  for (const auto& r : rows) s.record(r.pass(), r.ratio);
  Sink sink(g.out);
  ConfigEcho extra;
  if (want("decay")) extra.push_back({"decay_exponent", fmt_num(exponent)});
  if (g.format == "json") {
    ojson j = json_envelope("osc-check", cfg);
    for (const auto& r : rows) {
      j["results"].push_back({{"family", r.family}, {"parameter", r.parameter}, {"main", complex_json(r.main)},
                              {"quadrature", complex_json(r.quad)}, {"ratio", r.ratio}, {"tol", r.tol},
                              {"pass", r.pass()}});
    }
    if (want("decay")) j["decay_exponent"] = exponent;
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
    return exit_for(s);
  }
  CsvReport csv(sink.os(), "osc-check", cfg,
                {"family", "parameter", "main_re", "main_im", "quad_re", "quad_im", "ratio", "tol"});
  for (const auto& r : rows) csv.cell(r.family).cell(r.parameter).cell(r.main).cell(r.quad).cell(r.ratio).cell(r.tol).end_row();
  add_timing(extra, g, t);
  csv.footer(s, extra);
  return exit_for(s);
}

int run_lvalue(const Globals& g, const CharacterSpec& cs, double sre, double sim, i64 terms, i64 prime_bound,
               double tol, i64 regen) {
  Timer t;
  const HeckeCharacter psi = build_character(cs);
  const i64 table = std::max({terms, prime_bound, regen});
  const auto lam = lambda_coefficients(psi, table);
  const auto chk = lvalue_check(psi, lam, cplx(sre, sim), terms, prime_bound);
  Summary s;
  s.record(chk.rel_diff <= tol, chk.rel_diff);
  ConfigEcho cfg = base_echo("lvalue", g);
  echo_character(cfg, psi);
  cfg.push_back({"s_re", fmt_num(sre)});
  cfg.push_back({"s_im", fmt_num(sim)});
  cfg.push_back({"terms", fmt_int(terms)});
  cfg.push_back({"prime_bound", fmt_int(prime_bound)});
  cfg.push_back({"tol", fmt_num(tol)});
  cfg.push_back({"regen", fmt_int(regen)});
  ojson j = json_envelope("lvalue", cfg);
  ojson r;
  r["s"] = complex_json(chk.s);
  r["series"] = complex_json(chk.series.value);
  r["series_tail_bound"] = chk.series.tail_bound;
  r["euler"] = complex_json(chk.euler);
  r["rel_diff"] = chk.rel_diff;
  r["tol"] = tol;
  r["pass"] = chk.rel_diff <= tol;
  if (regen > 0) {
    const auto [d_reg, d_direct] = regeneration_check(psi, lam, regen);
    const double regen_tol = 1e-10;
    r["regeneration_max_diff"] = d_reg;
    r["lattice_max_diff"] = d_direct;
    r["regeneration_tol"] = regen_tol;
    s.record(d_reg <= regen_tol && d_direct <= regen_tol, std::max(d_reg, d_direct));
  }
  j["results"].push_back(r);
  json_finish(j, s);
  if (g.timing) j["wall_time"] = t.seconds();
  Sink sink(g.out);
  sink.os() << j.dump(2) << "\n";
  return exit_for(s);
}

int run_scan(const Globals& g, const CharacterSpec& cs, double tmin, double tmax, int steps, double exponent) {
  Timer t;
  if (steps < 1 || !(tmin > 0) || tmax < tmin) throw CLI::ValidationError("scan", "need 0 < t-min <= t-max, steps >= 1");
  const HeckeCharacter psi = build_character(cs);
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) grid.push_back(steps == 1 ? tmin : tmin + (tmax - tmin) * i / (steps - 1));
  GrowthPolicy pol;
  pol.exponent = exponent;
  const double X = growth_scan_max_x(psi.conductor().p, grid, pol);
  if (X * pol.V.b > 1e6) throw CLI::ValidationError("scan", "largest window exceeds the 1e6 coefficient cap");
  const auto lam = lambda_coefficients(psi, static_cast<i64>(std::ceil(X * pol.V.b)) + 1);
  const auto scan = growth_scan(lam, psi.conductor().p, grid, pol);
  ConfigEcho cfg = base_echo("scan", g);
  echo_character(cfg, psi);
  cfg.push_back({"t_min", fmt_num(tmin)});
  cfg.push_back({"t_max", fmt_num(tmax)});
  cfg.push_back({"steps", std::to_string(steps)});
  cfg.push_back({"exponent", fmt_num(exponent)});
  cfg.push_back({"policy", "X=(t p)^exponent, dyadic N plus N=X"});
  Summary s;  // diagnostic only
  Sink sink(g.out);
  if (g.format == "json") {
    ojson j = json_envelope("scan", cfg);
    for (const auto& r : scan.rows) j["results"].push_back({{"t", r.t}, {"X", r.X}, {"supN", r.supN}, {"ratio", r.sup_ratio}});
    j["fit"] = {{"label", scan.label}, {"n", scan.fit.n}, {"slope", scan.fit.slope}, {"intercept", scan.fit.intercept},
                {"stderr", scan.fit.stderr_slope}, {"ci95_low", scan.fit.ci_low}, {"ci95_high", scan.fit.ci_high}};
    json_finish(j, s);
    if (g.timing) j["wall_time"] = t.seconds();
    sink.os() << j.dump(2) << "\n";
    return 0;
  }
  CsvReport csv(sink.os(), "scan", cfg, {"t", "X", "supN", "ratio"});
  for (const auto& r : scan.rows) csv.cell(r.t).cell(r.X).cell(r.supN).cell(r.sup_ratio).end_row();
  ConfigEcho extra{{"fit.label", scan.label},
                   {"fit.n", std::to_string(scan.fit.n)},
                   {"fit.slope", fmt_num(scan.fit.slope)},
                   {"fit.intercept", fmt_num(scan.fit.intercept)},
                   {"fit.stderr", fmt_num(scan.fit.stderr_slope)},
                   {"fit.ci95_low", fmt_num(scan.fit.ci_low)},
                   {"fit.ci95_high", fmt_num(scan.fit.ci_high)}};
  add_timing(extra, g, t);
  csv.footer(s, extra);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heckevor: numerical checks for Hecke character sums"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.fallthrough();
  Globals g;
  Budgets b;
  app.add_option("--config", g.config, "flat key=value file mirroring the flags (flags win)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output path (stdout by default)");
  app.add_option("--seed", g.seed, "seed for randomized sweeps")->capture_default_str();
  app.add_flag("--timing", g.timing, "include wall time in reports");
  app.add_option("--oracle-cap", b.oracle_cap, "cap on q p ell for brute oracles")
      ->envname("HECKE_ORACLE_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", b.budget, "dual sum budget multiplier")
      ->envname("HECKE_VORONOI_BUDGET")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-terms", b.max_terms, "cap on dual sum terms")
      ->envname("HECKE_MAX_TERMS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  const std::map<std::string, std::string> env_of{
      {"oracle-cap", "HECKE_ORACLE_CAP"}, {"budget", "HECKE_VORONOI_BUDGET"}, {"max-terms", "HECKE_MAX_TERMS"}};

  i64 fi_D = 1, fi_bound = 10000;
  auto* fi = app.add_subcommand("field-info", "class group data of Q(sqrt(-D))");
  fi->add_option("--D", fi_D)->capture_default_str();
  fi->add_option("--search-bound", fi_bound)->check(CLI::PositiveNumber)->capture_default_str();

  CharacterSpec co_cs{1, 13, 2, 2};
  i64 co_nmax = 100;
  double co_tol = 1e-10;
  auto* co = app.add_subcommand("coeffs", "coefficient series lambda(n)");
  character_options(co, co_cs);
  co->add_option("--nmax", co_nmax)->check(CLI::PositiveNumber)->capture_default_str();
  co->add_option("--tol", co_tol)->capture_default_str();

  i64 vg_cmax = 200;
  double vg_tol = 1e-9;
  std::string vg_detail = "modulus";
  auto* vg = app.add_subcommand("verify-gauss", "quadratic Gauss sums, closed form against brute force");
  vg->add_option("--cmax", vg_cmax)->check(CLI::Range(1, 2000))->capture_default_str();
  vg->add_option("--tol", vg_tol)->capture_default_str();
  vg->add_option("--detail", vg_detail, "tuple: one row per (a,b,c); modulus: one row per c")
      ->check(CLI::IsMember({"tuple", "modulus"}))
      ->capture_default_str();

  std::string va_set = "standard";
  CharacterSpec va_cs{1, 13, 2, 2};
  i64 va_ell = 5, va_cmax = 20;
  std::vector<i64> va_q{3, 4, 6, 13}, va_m{1, 13};
  double va_tol = 1e-8;
  auto* va = app.add_subcommand("verify-arith", "arithmetic part, closed forms against the character sum");
  va->add_option("--set", va_set, "standard grid or custom parameters")
      ->check(CLI::IsMember({"standard", "custom"}))
      ->capture_default_str();
  character_options(va, va_cs);
  va->add_option("--ell", va_ell)->capture_default_str();
  va->add_option("--q", va_q)->delimiter(',');
  va->add_option("--m", va_m)->delimiter(',');
  va->add_option("--cmax", va_cmax)->check(CLI::Range(0, 200))->capture_default_str();
  va->add_option("--tol", va_tol)->capture_default_str();

  VoronoiArgs vv;
  auto* vvc = app.add_subcommand("verify-voronoi", "class sum against the dual Bessel sum");
  character_options(vvc, vv.cs);
  vvc->add_option("--ell", vv.ell)->capture_default_str();
  vvc->add_option("--q", vv.q)->capture_default_str();
  vvc->add_option("--m", vv.m)->capture_default_str();
  vvc->add_option("--N", vv.N)->check(CLI::PositiveNumber)->capture_default_str();
  vvc->add_option("--tol", vv.tol, "relative tolerance")->capture_default_str();
  vvc->add_option("--term-tol", vv.term_tol)->capture_default_str();
  vvc->add_option("--term-points", vv.term_points)->check(CLI::NonNegativeNumber)->capture_default_str();
  vvc->add_flag("--grid", vv.grid, "run the standard instance list as CSV rows");
  vvc->add_flag("--negative-control", vv.negative, "also run the dual sum of the conjugate lattice");
  vvc->add_flag("--experimental-even-d", vv.experimental_even_d, "allow -D = 2 mod 4");

  i64 dc_nmax = 50;
  std::vector<double> dc_Q{20};
  double dc_tol = 1e-9;
  auto* dc = app.add_subcommand("delta-check", "delta(n = 0) expansion");
  dc->add_option("--nmax", dc_nmax)->check(CLI::NonNegativeNumber)->capture_default_str();
  dc->add_option("--Q", dc_Q)->delimiter(',')->check(CLI::Range(1.0, 1000.0));
  dc->add_option("--tol", dc_tol)->capture_default_str();

  std::string oc_family = "all";
  int oc_count = 50;
  double oc_ptol = 1e-8;
  auto* oc = app.add_subcommand("osc-check", "stationary phase and Poisson checks");
  oc->add_option("--family", oc_family)
      ->check(CLI::IsMember({"all", "dagger", "stationary", "decay", "poisson", "double"}))
      ->capture_default_str();
  oc->add_option("--count", oc_count, "number of random Poisson test functions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oc->add_option("--poisson-tol", oc_ptol)->capture_default_str();

  CharacterSpec lv_cs{1, 13, 2, 2};
  double lv_sre = 2.0, lv_sim = 0.0, lv_tol = 1e-6;
  i64 lv_terms = 200000, lv_pb = 200000, lv_regen = 500;
  auto* lv = app.add_subcommand("lvalue", "Dirichlet series against the Euler product");
  character_options(lv, lv_cs);
  lv->add_option("--s-re", lv_sre)->check(CLI::Range(1.5, 100.0))->capture_default_str();
  lv->add_option("--s-im", lv_sim)->capture_default_str();
  lv->add_option("--terms", lv_terms)->check(CLI::Range(1, 10000000))->capture_default_str();
  lv->add_option("--prime-bound", lv_pb)->check(CLI::Range(1, 10000000))->capture_default_str();
  lv->add_option("--tol", lv_tol)->capture_default_str();
  lv->add_option("--regen", lv_regen, "check regeneration for n <= regen (0 skips)")
      ->check(CLI::Range(0, 100000))
      ->capture_default_str();

  CharacterSpec sc_cs{1, 13, 2, 2};
  double sc_tmin = 1.0, sc_tmax = 200.0, sc_exp = 1.05;
  int sc_steps = 8;
  auto* scn = app.add_subcommand("scan", "exploratory growth scan of smoothed sums");
  character_options(scn, sc_cs);
  scn->add_option("--t-min", sc_tmin)->capture_default_str();
  scn->add_option("--t-max", sc_tmax)->capture_default_str();
  scn->add_option("--steps", sc_steps)->capture_default_str();
  scn->add_option("--exponent", sc_exp)->check(CLI::Range(0.5, 2.0))->capture_default_str();

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // A first pass finds --config; its entries are appended as flags.
    std::string cfg_path;
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) cfg_path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) cfg_path = args[i].substr(9);
    }
    if (!cfg_path.empty()) {
      for (auto& extra : config_args(cfg_path, args, env_of)) args.push_back(extra);
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*fi) {
      if (g.format.empty()) g.format = "json";
      return run_field_info(g, fi_D, fi_bound);
    }
    if (*co) {
      if (g.format.empty()) g.format = "csv";
      return run_coeffs(g, co_cs, co_nmax, co_tol);
    }
    if (*vg) {
      if (g.format.empty()) g.format = "csv";
      return run_verify_gauss(g, vg_cmax, vg_tol, vg_detail);
    }
    if (*va) {
      if (g.format.empty()) g.format = "csv";
      return run_verify_arith(g, va_set, va_cs, va_ell, va_q, va_m, va_cmax, va_tol, b);
    }
    if (*vvc) {
      if (g.format.empty()) g.format = vv.grid ? "csv" : "json";
      return run_verify_voronoi(g, vv, b);
    }
    if (*dc) {
      if (g.format.empty()) g.format = "csv";
      return run_delta_check(g, dc_nmax, dc_Q, dc_tol);
    }
    if (*oc) {
      if (g.format.empty()) g.format = "csv";
      return run_osc_check(g, oc_family, oc_count, oc_ptol);
    }
    if (*lv) return run_lvalue(g, lv_cs, lv_sre, lv_sim, lv_terms, lv_pb, lv_tol, lv_regen);
    if (*scn) {
      if (g.format.empty()) g.format = "csv";
      return run_scan(g, sc_cs, sc_tmin, sc_tmax, sc_steps, sc_exp);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
