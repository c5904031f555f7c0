#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HECKEVOR_BIN + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string footer(const std::string& out, const std::string& key) {
  const auto at = out.find("# " + key + "=");
  if (at == std::string::npos) return "";
  const auto start = at + key.size() + 3;
  return out.substr(start, out.find('\n', start) - start);
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(Cli, VerifyGauss) {
  const auto r = run("verify-gauss --cmax 200");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(footer(r.out, "summary.fail"), "0");
  EXPECT_LE(std::stod(footer(r.out, "summary.max_error")), 1e-9);
}

TEST(Cli, DeltaCheck) {
  const auto r = run("delta-check --nmax 50 --Q 20");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("n,Q,value,diff,tol\n"), std::string::npos);
  EXPECT_EQ(footer(r.out, "summary.fail"), "0");
}

TEST(Cli, UnknownFlagIsUsageError) {
  const auto r = run("verify-gauss --bogus");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Usage"), std::string::npos);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ToleranceFailureExitsWithTwo) {
  const auto r = run("verify-gauss --cmax 30 --tol 1e-300");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(footer(r.out, "summary.fail"), "0");
}

TEST(Cli, LibraryErrorExitsWithOne) { EXPECT_EQ(run("field-info --D 4").code, 1); }

TEST(Cli, JsonOutputParses) {
  const auto r = run("field-info --D 5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "heckevor.field-info.v1");
  EXPECT_EQ(j["results"][0]["class_number"], 2);
  EXPECT_FALSE(j.contains("wall_time"));
}

TEST(Cli, CsvCoefficients) {
  const auto r = run("coeffs --nmax 5");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("n,re,im\n1,1,"), std::string::npos);
}

TEST(Cli, ConfigFileAndPrecedence) {
  const auto cfg = temp_file("heckevor_cli_test.cfg");
  {
    std::ofstream f(cfg);
    f << "# delta settings\nnmax=3\nQ=7\n";
  }
  const auto from_cfg = run("--config " + cfg.string() + " delta-check");
  ASSERT_EQ(from_cfg.code, 0) << from_cfg.out;
  EXPECT_NE(from_cfg.out.find("# config.nmax=3\n"), std::string::npos);
  EXPECT_NE(from_cfg.out.find("# config.Q=7\n"), std::string::npos);
  const auto flag_wins = run("--config " + cfg.string() + " delta-check --nmax 2");
  EXPECT_NE(flag_wins.out.find("# config.nmax=2\n"), std::string::npos);
  {
    std::ofstream f(cfg);
    f << "no_such_key=1\n";
  }
  EXPECT_EQ(run("--config " + cfg.string() + " delta-check").code, 1);
  std::filesystem::remove(cfg);
}

TEST(Cli, EnvironmentOverridesConfig) {
  const auto cfg = temp_file("heckevor_cli_env.cfg");
  {
    std::ofstream f(cfg);
    f << "oracle-cap=5000\n";
  }
  const auto r = run("--config " + cfg.string() + " verify-arith --cmax 3", "HECKE_ORACLE_CAP=4500");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("# config.oracle_cap=4500\n"), std::string::npos);
  EXPECT_NE(run("--config " + cfg.string() + " verify-arith --cmax 3").out.find("# config.oracle_cap=5000\n"),
            std::string::npos);
  std::filesystem::remove(cfg);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = temp_file("heckevor_cli_out.csv");
  ASSERT_EQ(run("--out " + path.string() + " delta-check --nmax 4").code, 0);
  std::ifstream f(path);
  const std::string file((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(file, run("delta-check --nmax 4").out);
  std::filesystem::remove(path);
}

TEST(Cli, RerunsAreByteIdentical) {
  for (const char* args : {"osc-check --family poisson --count 10", "verify-arith --cmax 6", "lvalue --terms 20000 --prime-bound 20000"}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args << "\n" << a.out;
    EXPECT_EQ(a.out, b.out) << args;
  }
}
