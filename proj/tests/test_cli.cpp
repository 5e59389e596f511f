#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <vector>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args, std::string* out = nullptr)
{
  fs::path log = fs::temp_directory_path() / "formdeck_cli_test.out";
  std::string cmd = std::string(FORMDECK_CLI) + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("formdeck_cli_" + name); }

} // namespace

TEST(Cli, UsageErrorsExit64)
{
  EXPECT_EQ(run(""), 64);
  EXPECT_EQ(run("frobnicate"), 64);
  EXPECT_EQ(run("gen --family hexagon"), 64);
}

TEST(Cli, GenerateValidateAndBetti)
{
  fs::path p = scratch("annulus.json");
  ASSERT_EQ(run("gen --family annulus --level 1 --out " + p.string()), 0);
  std::string out;
  EXPECT_EQ(run("validate " + p.string(), &out), 0);
  EXPECT_EQ(run("topology betti " + p.string(), &out), 0);
  EXPECT_NE(out.find("cellular,1,1"), std::string::npos);
  EXPECT_NE(out.find("simplicial,1,1"), std::string::npos);
}

TEST(Cli, ValidateExitCodes)
{
  fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  std::string out;
  EXPECT_EQ(run("validate " + bad.string(), &out), 2);
  EXPECT_NE(out.find("parse"), std::string::npos);

  auto j = nlohmann::json::parse(formdeck::square_mesh(2).to_json());
  auto& cells = j["cells"]["2"];
  cells[1]["simplices"].push_back(cells[0]["simplices"][0]);
  fs::path nc = scratch("nonconforming.json");
  std::ofstream(nc) << j.dump();
  EXPECT_EQ(run("validate " + nc.string(), &out), 3);
  EXPECT_NE(out.find("non-conforming"), std::string::npos);
}

TEST(Cli, ChecksPrintCsv)
{
  fs::path p = scratch("pyramid.json");
  ASSERT_EQ(run("gen --family pyramid --out " + p.string()), 0);
  std::string out;
  EXPECT_EQ(run("lift check " + p.string(), &out), 0);
  EXPECT_EQ(out.rfind("k,cochain_map_defect", 0), 0u);
  EXPECT_EQ(run("ddr check " + p.string() + " --r 1", &out), 0);
  EXPECT_EQ(out.rfind("k,dofs", 0), 0u);
}

TEST(Cli, GenerateSeveralLevels)
{
  fs::path p = scratch("lshape.json");
  std::string out;
  ASSERT_EQ(run("gen --family lshape --levels 2 --out " + p.string(), &out), 0);
  EXPECT_TRUE(fs::exists(scratch("lshape_l1.json")));
  EXPECT_TRUE(fs::exists(scratch("lshape_l2.json")));
  EXPECT_EQ(run("gen --family lshape --levels 2 --level 1"), 64);
}

TEST(Cli, ScalingExponents)
{
  std::string out;
  ASSERT_EQ(run("appendix-scalings --shape triangle --levels 3", &out), 0);
  std::istringstream in(out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    ASSERT_GE(f.size(), 3u);
    EXPECT_NEAR(std::stod(f[2]), std::stod(f[1]), 1e-6) << f[0];
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}

TEST(Cli, SweepIsDeterministic)
{
  fs::path a = scratch("det_a.csv"), b = scratch("det_b.csv");
  ASSERT_EQ(run("poincare sweep --family square --levels 2 --k 1 --r 1 --samples 3 --out " + a.string()), 0);
  ASSERT_EQ(run("poincare sweep --family square --levels 2 --k 1 --r 1 --samples 3 --out " + b.string()), 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, SweepWritesCsvAndJson)
{
  fs::path csv = scratch("sweep.csv");
  ASSERT_EQ(run("poincare sweep --family square --levels 2 --k 0 --r 1 --samples 2 --out " + csv.string()), 0);
  fs::path js = csv;
  js.replace_extension(".json");
  std::ifstream in(js);
  auto j = nlohmann::json::parse(in);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_GT(j[0]["spectral_constant"].get<double>(), 0.0);
}
