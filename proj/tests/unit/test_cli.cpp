#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"locmst"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = locmst::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("locmst_cli_" + name)).string();
}

}  // namespace

TEST(Cli, BoundsJson) {
  const Outcome o = run({"bounds", "--alpha", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["command"], "bounds");
  EXPECT_NEAR(j["result"]["beta_low"].get<double>(), 0.0735633, 1e-7);
  EXPECT_EQ(j["config"]["alpha"], 1.0);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"bounds", "--alpha", "-1"}).code, 2);
  EXPECT_EQ(run({"bounds", "--eps1", "2", "--eps2", "1"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"mst", "--points", "/nonexistent/points.csv"}).code, 2);
  EXPECT_EQ(run({"prop1", "--K", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SampleThenMst) {
  const std::string pts = temp_path("pts.csv");
  ASSERT_EQ(run({"sample", "--n", "50", "--seed", "3", "--out", pts.c_str()}).code, 0);
  const Outcome o = run({"mst", "--points", pts.c_str(), "--format", "json", "--verify"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["result"]["edges"].size(), 49u);
  const Outcome csv = run({"mst", "--points", pts.c_str(), "--algorithm", "kruskal", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("# command: mst", 0), 0u);
  std::filesystem::remove(pts);
}

TEST(Cli, SimulateDeterministic) {
  const Outcome a = run({"simulate", "--n", "100", "--alphas", "1,2", "--reps", "2", "--seed", "5"});
  const Outcome b = run({"--threads", "1", "simulate", "--n", "100", "--alphas", "1,2", "--reps", "2", "--seed", "5"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, kept;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      kept += line.substr(0, line.rfind(',')) + "\n";  // drop runtime_ms
    }
    return kept;
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 3 + 1 + 4);
}

TEST(Cli, LayoutAndInvariance) {
  const Outcome l = run({"layout", "--K", "2", "--levels", "3"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(nlohmann::json::parse(l.out)["result"]["D"], 6143);
  const Outcome inv = run({"invariance", "--n", "30", "--reps", "3"});
  EXPECT_EQ(inv.code, 0) << inv.err;
}

TEST(Cli, Prop1Planted) {
  const Outcome o = run({"prop1", "--K", "2", "--level", "1", "--levels", "1", "--reps", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["result"]["star_failures"], 0);
}

TEST(Cli, VersionFlag) {
  const Outcome o = run({"--version"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("0.1.0"), std::string::npos);
}
