#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(OOG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) / ("oog_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("scalar.plant", "# 1/(s+1) on both outputs\nA 1 1\n-1\nB 1 1\n1\nCp 1 1\n1\nCr 1 1\n1\n");
    write("unstable.plant", "A 1 1\n0.5\nB 1 1\n1\nCp 1 1\n1\nCr 1 1\n1\n");
    write("broken.plant", "A 2 2\n-1 0\nB 1 1\n1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ComputeText) {
  const auto r = run("--epsilon 0.01 compute " + path("scalar.plant"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("value           0.995"), std::string::npos) << r.out;
}

TEST_F(Cli, ComputeJsonSchema) {
  const auto r = run("--epsilon 0.01 --json compute " + path("scalar.plant"));
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  std::set<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.insert(k);
  const std::set<std::string> golden{"epsilon", "iterations", "lower", "peak_frequency",
                                     "tol_gamma", "upper", "value"};
  EXPECT_EQ(keys, golden);
  EXPECT_TRUE(doc["iterations"].is_number_integer());
  EXPECT_NEAR(doc["value"].get<double>(), 0.995037190209989, 1e-4);
  EXPECT_EQ(doc["peak_frequency"].get<double>(), 0.0);
  EXPECT_EQ(run("--epsilon 0.01 --json compute " + path("scalar.plant")).out, r.out);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("compute " + path("unstable.plant")).status, 3);
  EXPECT_EQ(run("compute " + path("broken.plant")).status, 2);
  EXPECT_EQ(run("compute " + path("missing.plant")).status, 2);
  EXPECT_EQ(run("--epsilon 0 compute " + path("scalar.plant")).status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, UnstableMessage) {
  const std::string cmd = std::string(OOG_CLI_PATH) + " compute " + path("unstable.plant") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 512> buf{};
  const size_t n = fread(buf.data(), 1, buf.size() - 1, pipe);
  pclose(pipe);
  EXPECT_NE(std::string(buf.data(), n).find("system is not stable within margin"), std::string::npos);
}

TEST_F(Cli, SweepFamilies) {
  const auto r = run("--epsilon 1e-3,1e-6 sweep " + path("scalar.plant") + " --points 20");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "omega,sigma_bar,epsilon");
  std::map<double, std::map<double, double>> curves;
  while (std::getline(in, line)) {
    double w, s, e;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &w, &s, &e), 3) << line;
    curves[e][w] = s;
  }
  ASSERT_EQ(curves.size(), 2u);
  EXPECT_EQ(curves[1e-3].size(), 21u);
  EXPECT_LT(curves[1e-3][1e4], curves[1e-6][1e4]);
}

TEST_F(Cli, SweepRejectsBadEpsilon) {
  EXPECT_EQ(run("--epsilon 0 sweep " + path("scalar.plant")).status, 2);
  EXPECT_EQ(run("sweep " + path("scalar.plant")).status, 2);
}

TEST_F(Cli, OracleAndCurve) {
  const auto r = run("--epsilon 0.01 --json oracle " + path("scalar.plant") + " --curve " + path("c.csv"));
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["value"].get<double>(), 0.995037190209989, 1e-12);
  EXPECT_EQ(doc["omega"].get<double>(), 0.0);
  std::ifstream curve(path("c.csv"));
  std::string header;
  std::getline(curve, header);
  EXPECT_EQ(header, "omega,sigma_bar");
  const auto hinf = nlohmann::json::parse(run("--json oracle --hinf " + path("scalar.plant")).out);
  EXPECT_NEAR(hinf["value"].get<double>(), 1.0, 1e-6);
}

TEST_F(Cli, GenBatchWritesManifest) {
  ASSERT_EQ(run("--seed 10 --out " + path("batch") + " gen random --size 10 --count 3").status, 0);
  for (int s : {10, 11, 12}) EXPECT_TRUE(fs::exists(dir_ / "batch" / ("instance_" + std::to_string(s) + ".plant")));
  std::ifstream manifest(dir_ / "batch" / "manifest.csv");
  std::string line;
  int rows = 0;
  while (std::getline(manifest, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(run("compute " + path("batch/instance_11.plant")).status, 0);
}

TEST_F(Cli, GenSingleIsDeterministic) {
  ASSERT_EQ(run("--seed 5 --out " + path("a.plant") + " gen network --size 50").status, 0);
  ASSERT_EQ(run("--seed 5 --out " + path("b.plant") + " gen network --size 50").status, 0);
  std::ifstream a(path("a.plant")), b(path("b.plant"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(run("--out " + path("x.plant") + " gen quadtank").status, 2);
}

TEST_F(Cli, BenchWritesRecordsAndSummary) {
  const auto r = run("--seed 1 --out " + path("bench.csv") + " bench --sizes 5 --instances 2 --grid-points 300");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(dir_ / "bench.csv"));
  std::ifstream summary(dir_ / "bench_summary.csv");
  std::string header;
  std::getline(summary, header);
  EXPECT_EQ(header, "n_x,method,instances,tavg,tmin,tmax,accuracy");
}
