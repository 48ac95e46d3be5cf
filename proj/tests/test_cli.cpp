#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "spo/superspace.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(SPOMIN_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json parse(const CliRun& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, SuiteRunIsGreenAndDeterministic) {
  const std::string args = "--m 1 --n 1 --m 2 --n 0 --suite algebra,gk,bessel --seed 7";
  CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  auto j = parse(a);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_GT(j["summary"]["pass"].get<int>(), 0);
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("anchor"));
    EXPECT_TRUE(c["m"] == 1 || c["m"] == 2);
  }
  // Records come grouped by suite, grid order within a suite.
  EXPECT_EQ(j["checks"][0]["suite"], "algebra");
  EXPECT_EQ(j["checks"][0]["m"], 1);
}

TEST(Cli, SeedChangesNothingButTheSamples) {
  CliRun a = run("--m 1 --n 1 --suite reps --seed 1");
  CliRun b = run("--m 1 --n 1 --suite reps --seed 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(parse(a)["summary"], parse(b)["summary"]);
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run("--m 0 --n 1").code, 2);
  EXPECT_EQ(run("--m 0 --n 0").code, 2);
  EXPECT_EQ(run("--m 1").code, 2);
  EXPECT_EQ(run("--degree-cap 9 --m 1 --n 0").code, 2);
  EXPECT_EQ(run("--suite nonsense").code, 2);
  EXPECT_EQ(run("--format xml").code, 2);
  EXPECT_EQ(run("--no-such-flag").code, 2);
  EXPECT_EQ(run("--m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0 --m 1 --n 0").code, 2);
  EXPECT_EQ(run("verify --rep nonsense --m 1 --n 1").code, 2);
  EXPECT_EQ(run("table --kind nonsense").code, 2);
  EXPECT_EQ(run("gram --product nonsense").code, 2);
  EXPECT_EQ(run("hermite --alpha 1,1 --m 1 --n 1").code, 2);
  EXPECT_EQ(run("sb --input 'x1 +' --m 1 --n 1").code, 2);
}

TEST(Cli, DisplayedFormsFailWithWitnesses) {
  CliRun r = run("--m 1 --n 1 --suite products --include-displayed");
  ASSERT_EQ(r.code, 1);
  auto j = parse(r);
  bool seen = false;
  for (const auto& c : j["checks"]) {
    if (c["check_id"] == "omega_closed_form") {
      seen = true;
      EXPECT_EQ(c["status"], "fail");
      EXPECT_FALSE(c["witness"].get<std::string>().empty());
    } else {
      EXPECT_EQ(c["status"], "pass") << c.dump();
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, TextFormat) {
  CliRun r = run("--m 2 --n 0 --suite gk --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS  gk/gk_counting (2,0)"), std::string::npos);
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);
}

TEST(Cli, VdimTable) {
  CliRun r = run("table --kind vdim");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["kind"], "vdim");
  ASSERT_EQ(j["rows"].size(), 18U);
  for (const auto& row : j["rows"]) {
    EXPECT_EQ(row["sdim"], row["sdim_formula"]);
    int M = std::stoi(row["M"].get<std::string>());
    EXPECT_EQ(std::stoi(row["m"].get<std::string>()) - 2 * std::stoi(row["n"].get<std::string>()), M);
  }
}

TEST(Cli, GkTableCountsEvenDegreeMonomials) {
  // For n = 0, dim P_2k = C(2k + m - 1, m - 1).
  CliRun r = run("table --kind gk --m 2 --n 0");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : parse(r)["rows"]) {
    int k = std::stoi(row["k"].get<std::string>());
    EXPECT_EQ(row["dim_P_2k"], std::to_string(2 * k + 1));
  }
}

TEST(Cli, FockGramOnBosonicMonomialsIsFactorial) {
  CliRun r = run("gram --product fock --k 3 --m 2 --n 0");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  ASSERT_EQ(j["basis"].size(), 4U);
  spo::SuperSpace Z(2, 0, {"z"});
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      std::string want = "0";
      if (a == b) {
        spo::Poly p = Z.parse(j["basis"][a].get<std::string>());
        auto mono = p.terms().begin()->first;
        long f = 1;
        for (unsigned e : mono)
          for (unsigned t = 2; t <= e; ++t) f *= t;
        want = std::to_string(f);
      }
      EXPECT_EQ(j["matrix"][a][b], want) << a << "," << b;
    }
}

TEST(Cli, HermiteCommand) {
  CliRun r = run("hermite --alpha 2 --variant H --m 1 --n 0");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  spo::SuperSpace X(1, 0);
  EXPECT_EQ(X.parse(j["poly"].get<std::string>()), X.parse("4*x1^2 - 2"));
  EXPECT_EQ(j["weight"], "0");
}

TEST(Cli, SegalBargmannCommand) {
  CliRun r = run("sb --input '2*x1' --m 1 --n 1");
  ASSERT_EQ(r.code, 0);
  spo::SuperSpace X(1, 1);
  EXPECT_EQ(X.parse(parse(r)["output"].get<std::string>()), X.x(1));
  CliRun back = run("sb --inverse --input 'x1' --m 1 --n 1 --format text");
  ASSERT_EQ(back.code, 0);
  EXPECT_NE(back.out.find("exp(-R^2)"), std::string::npos);
}

TEST(Cli, VerifyCommandListsEveryBasisPair) {
  CliRun r = run("verify --rep pi_tilde_U --m 1 --n 1");
  ASSERT_EQ(r.code, 0);
  auto rows = parse(r)["rows"];
  // dim spo(2m|4n) = m(2m+1) + 4n(4n-1)/2 + 8mn = 17 for (1,1); one row per pair a <= b.
  EXPECT_EQ(rows.size(), 17U * 18U / 2U);
  for (const auto& row : rows) EXPECT_EQ(row["status"], "pass");
}
