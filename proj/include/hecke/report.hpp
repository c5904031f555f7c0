#pragma once

// Report envelopes shared by the command line tool and the acceptance
// runner. Numbers are printed with %.17g so output is byte-stable.

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/numtheory.hpp"

namespace hecke {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string schema_tag(const std::string& cmd) { return "heckevor." + cmd + ".v1"; }

inline nlohmann::ordered_json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

struct Summary {
  long pass = 0;
  long fail = 0;
  double max_error = 0.0;

  void record(bool ok, double err) {
    (ok ? pass : fail) += 1;
    if (err > max_error) max_error = err;
  }
  bool ok() const { return fail == 0; }
};

// Config echo: ordered key/value pairs.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

class CsvReport {
 public:
  CsvReport(std::ostream& os, const std::string& cmd, const ConfigEcho& cfg, const std::vector<std::string>& columns)
      : os_(os) {
    os_ << "# schema=" << schema_tag(cmd) << "\n";
    os_ << "# tool_version=" << kToolVersion << "\n";
    for (const auto& [k, v] : cfg) os_ << "# config." << k << "=" << v << "\n";
    for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
  }

  CsvReport& cell(const std::string& s) {
    os_ << (first_ ? "" : ",") << s;
    first_ = false;
    return *this;
  }
  CsvReport& cell(double x) { return cell(fmt_num(x)); }
  CsvReport& cell(i64 x) { return cell(std::to_string(x)); }
  CsvReport& cell(int x) { return cell(std::to_string(x)); }
  CsvReport& cell(bool b) { return cell(std::string(b ? "1" : "0")); }
  CsvReport& cell(cplx z) { return cell(z.real()).cell(z.imag()); }
  void end_row() {
    os_ << "\n";
    first_ = true;
  }
  void footer(const Summary& s, const ConfigEcho& extra = {}) {
    for (const auto& [k, v] : extra) os_ << "# " << k << "=" << v << "\n";
    os_ << "# summary.pass=" << s.pass << "\n# summary.fail=" << s.fail << "\n# summary.max_error=" << fmt_num(s.max_error)
        << "\n";
  }

 private:
  std::ostream& os_;
  bool first_ = true;
};

inline nlohmann::ordered_json json_envelope(const std::string& cmd, const ConfigEcho& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = schema_tag(cmd);
  j["tool_version"] = kToolVersion;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg) c[k] = v;
  j["config"] = c;
  j["results"] = nlohmann::ordered_json::array();
  return j;
}

inline void json_finish(nlohmann::ordered_json& j, const Summary& s) {
  j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"max_error", s.max_error}};
}

}  // namespace hecke
