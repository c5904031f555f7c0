#include <gtest/gtest.h>

#include "hecke/report.hpp"

using namespace hecke;

TEST(Report, NumbersRoundTrip) {
  EXPECT_EQ(fmt_num(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt_num(-2.0), "-2");
  for (double x : {1.0 / 3.0, 6.02214076e23, -1e-300, 2.5}) EXPECT_EQ(std::stod(fmt_num(x)), x);
}

TEST(Report, SchemaTag) { EXPECT_EQ(schema_tag("verify-gauss"), "heckevor.verify-gauss.v1"); }

TEST(Report, CsvLayout) {
  std::ostringstream os;
  CsvReport r(os, "delta-check", {{"nmax", "2"}}, {"n", "value", "ok"});
  r.cell(i64{-1}).cell(0.5).cell(true);
  r.end_row();
  Summary s;
  s.record(true, 1e-17);
  s.record(false, 2.0);
  r.footer(s);
  EXPECT_EQ(os.str(),
            "# schema=heckevor.delta-check.v1\n# tool_version=1.0.0\n# config.nmax=2\nn,value,ok\n-1,0.5,1\n"
            "# summary.pass=1\n# summary.fail=1\n# summary.max_error=2\n");
  EXPECT_FALSE(s.ok());
}

TEST(Report, ComplexCellsTakeTwoColumns) {
  std::ostringstream os;
  CsvReport r(os, "coeffs", {}, {"n", "re", "im"});
  r.cell(i64{2}).cell(cplx(1.5, -0.25));
  r.end_row();
  EXPECT_NE(os.str().find("\n2,1.5,-0.25\n"), std::string::npos);
}

TEST(Report, JsonEnvelopeIsDeterministic) {
  auto make = [] {
    auto j = json_envelope("lvalue", {{"s_re", "2"}, {"a", "1"}});
    j["results"].push_back({{"value", complex_json({0.1, -3.0})}});
    Summary s;
    s.record(true, 5e-10);
    json_finish(j, s);
    return j.dump(2);
  };
  const std::string a = make();
  EXPECT_EQ(a, make());
  const auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["schema"], "heckevor.lvalue.v1");
  EXPECT_EQ(j["config"].begin().key(), "s_re");  // insertion order kept
  EXPECT_EQ(j["summary"]["pass"], 1);
  EXPECT_DOUBLE_EQ(j["results"][0]["value"]["im"].get<double>(), -3.0);
}
