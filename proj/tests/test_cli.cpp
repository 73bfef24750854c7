#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string("\"") + CODEMIX_CLI + "\" " + args + " 2>&1";
  Outcome o{-1, {}};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) o.out.append(buf, n);
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("codemix_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const auto p = dir / "grid.ini";
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, VersionAndUsage) {
  const auto v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("codemix"), std::string::npos);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("run").code, 1);
}

TEST(Cli, MissingConfigIsExitOne) {
  const auto o = run("run --config /nonexistent/grid.ini");
  EXPECT_EQ(o.code, 1) << o.out;
}

TEST(Cli, BadConfigKeyIsExitOne) {
  const auto dir = scratch("badkey");
  const auto cfg = write_config(dir, "colour = blue\n");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 1);
}

TEST(Cli, MissingDataIsExitTwo) {
  const auto dir = scratch("nodata");
  const auto cfg = write_config(dir, "data = absent.csv\n");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 2);
  EXPECT_EQ(run("inspect --data " + (dir / "absent.csv").string()).code, 2);
}

TEST(Cli, ToyRunWritesEveryOutput) {
  const auto dir = scratch("toy");
  const auto cfg = write_config(dir, "rf.n_estimators = 10, 20\nworkers = 2\n");
  const auto out = dir / "out";
  const auto o = run("run --config " + cfg.string() + " --data " +
                     testing_support::fixture("toy.csv").string() + " --out " + out.string());
  ASSERT_EQ(o.code, 0) << o.out;
  for (const char* f : {"results.csv", "report.md", "run.json", "timings.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_TRUE(fs::is_directory(out / "roc"));
  EXPECT_FALSE(fs::is_empty(out / "roc"));
}

TEST(Cli, FailedCellIsExitThree) {
  const auto dir = scratch("failcell");
  const auto cfg = write_config(dir, "data = " + testing_support::fixture("toy.csv").string() +
                                         "\nclassifiers = knn, nb\nknn.k = 50\n");
  const auto o = run("run --config " + cfg.string() + " --out " + (dir / "out").string());
  EXPECT_EQ(o.code, 3) << o.out;
  EXPECT_TRUE(fs::exists(dir / "out" / "results.csv"));
}

TEST(Cli, InspectPrintsRowsAndLabels) {
  const auto o = run("inspect --data " + testing_support::fixture("toy.csv").string());
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("rows: 12"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("labels: 3"), std::string::npos);
  EXPECT_NE(o.out.find("positive\t4"), std::string::npos);
  EXPECT_EQ(run("inspect --data " + testing_support::fixture("toy.csv").string() +
                " --label-column sentiment")
                .code,
            2);
}
