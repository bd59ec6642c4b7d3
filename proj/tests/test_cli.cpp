#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(HC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(HC_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, CenterSymmetricSphere) {
  const CliRun r = run("center --input " + data("sphere3.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "converged");
  EXPECT_LT(std::hypot(j["x_c"][0].get<double>(), j["x_c"][1].get<double>()), 1e-9);
  EXPECT_EQ(j["hypothesis_class"], "Thm2_i");
  EXPECT_EQ(j["pushed"]["atoms"].size(), 3u);
}

TEST(Cli, CenterAmbiguous) {
  const CliRun r = run("center --input " + data("remark4.json"));
  EXPECT_EQ(r.code, 2);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["uniqueness"], "Ambiguous");
  EXPECT_GE(j["clusters"].size(), 2u);
}

TEST(Cli, CenterDivergent) {
  const CliRun r = run("center --input " + data("no_existence.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out)["status"], "divergent");
}

TEST(Cli, SchemaErrorsExitOne) {
  EXPECT_EQ(run("center --input " + data("bad_dimension.json")).code, 1);
  EXPECT_EQ(run("center --input " + data("bad_weight.json")).code, 1);
  EXPECT_EQ(run("center").code, 1);
  EXPECT_EQ(run("center --input " + data("sphere3.json") + " --strategy sideways").code, 1);
  EXPECT_EQ(run("reproduce no-such-example").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, StrategyAndFlagsOverlay) {
  const CliRun r = run("center --input " + data("sphere3.json") +
                    " --strategy descent --tol 1e-12 --max-iters 200");
  ASSERT_EQ(r.code, 0);
  EXPECT_LT(json::parse(r.out)["residual"].get<double>(), 1e-12);
}

TEST(Cli, ReportsAreBitIdentical) {
  const std::string args = "center --input " + data("remark4.json") + " --seed 5";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, PushedAtomsReingest) {
  const CliRun r = run("center --input " + data("sphere3.json"));
  ASSERT_EQ(r.code, 0);
  json doc = json::parse(r.out)["pushed"];
  doc["weight"] = {{"kind", "identity"}};
  const std::string tmp = testing::TempDir() + "pushed.json";
  std::ofstream(tmp) << doc.dump();
  const CliRun again = run("center --input " + tmp);
  ASSERT_EQ(again.code, 0);
  const json j = json::parse(again.out);
  EXPECT_LT(std::hypot(j["x_c"][0].get<double>(), j["x_c"][1].get<double>()), 1e-9);
}

TEST(Cli, EnergyProfile) {
  const CliRun r = run("energy --input " + data("interior_tri.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["forward"].size(), 11u);
  EXPECT_EQ(j["forward"][0]["energy"].get<double>(), 0.0);
  EXPECT_EQ(j["backward"][0]["energy"].get<double>(), 0.0);
  // growth beyond some radius
  EXPECT_GT(j["forward"][10]["energy"].get<double>(), j["forward"][4]["energy"].get<double>());
}

TEST(Cli, EnergyProfileOnSphereMeasureGrows) {
  const CliRun r = run("energy --input " + data("sphere3.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  // samples every 0.1 out to 5: index 20 is s = 2, index 50 is s = 5
  EXPECT_GT(j["forward"][50]["energy"].get<double>(), j["forward"][20]["energy"].get<double>());
  EXPECT_GT(j["backward"][50]["energy"].get<double>(), j["backward"][20]["energy"].get<double>());
}

TEST(Cli, FoldResidual) {
  const CliRun r = run("fold --input " + data("fold_two_atoms.json"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_LT(j["orthogonality_residual"].get<double>(), 1e-10);
  for (const auto& a : j["folded"]["atoms"]) EXPECT_LE(a["x"][0].get<double>(), 0.0);
}

TEST(Cli, VerifyPasses) {
  const CliRun r = run("verify --input " + data("interior_tri.json") + " --seed 3");
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["seed"], 3);
}

TEST(Cli, ReproduceFixtures) {
  for (const char* name :
       {"remark3", "remark4", "remark5", "signed-ball", "signed-circle", "no-existence"}) {
    const CliRun r = run(std::string("reproduce ") + name);
    EXPECT_EQ(r.code, 0) << name;
    EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>()) << name;
  }
}

TEST(Cli, OutputFlagWritesFile) {
  const std::string tmp = testing::TempDir() + "report.json";
  const CliRun r = run("reproduce remark4 --output " + tmp);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(json::parse(ss.str())["fixture"], "remark4");
}
