#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "netinf/cascade.hpp"
#include "netinf/inference.hpp"
#include "netinf/ingest.hpp"
#include "netinf/text.hpp"
#include "oracles.hpp"

using namespace netinf;
namespace fs = std::filesystem;

namespace {

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("netinf_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(NETINF_CLI) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string output() const { return text::read_file((dir_ / "stdout.txt").string()); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SyntheticPipeline) {
  ASSERT_EQ(run("gen-graph --power 5 --edges 64 --seed 3 --out " + path("g.graph")), 0) << output();
  EXPECT_TRUE(text::read_file(path("g.graph")).starts_with("nodes:32\n"));

  ASSERT_EQ(run("simulate --graph " + path("g.graph") +
                " --count 100 --beta 0.5 --alpha-min 0.1 --alpha-max 10 --coverage 0.85 --seed 9 --out " +
                path("c.cascades")),
            0)
      << output();
  EXPECT_NE(output().find("cascades=100"), std::string::npos);
  const auto set = load_cascades(path("c.cascades"));
  EXPECT_EQ(set.cascades.size(), 100u);
  EXPECT_GE(coverage(set, 32), 0.85);

  ASSERT_EQ(run("infer --cascades " + path("c.cascades") + " --k 40 --out " + path("a.edges")), 0)
      << output();
  const auto inferred = load_inferred(path("a.edges"));
  EXPECT_EQ(inferred.network.selections.size(), 40u);
  EXPECT_EQ(inferred.network.edges(), infer(set, inferred.config).edges());
  ASSERT_EQ(run("infer --cascades " + path("c.cascades") + " --k 20 --alpha 2 --out " + path("b.edges")),
            0);
  EXPECT_TRUE(text::read_file(path("b.edges")).starts_with("# k=20 alpha=2 beta=0.5 epsilon=1e-09\n"));

  ASSERT_EQ(run("eval --inferred " + path("b.edges") + " --baseline " + path("a.edges") +
                " --truth " + path("g.graph") + " --format dot --degrees " + path("deg.csv") +
                " --out " + path("diff.dot")),
            0)
      << output();
  EXPECT_NE(output().find("precision="), std::string::npos);
  EXPECT_TRUE(text::read_file(path("diff.dot")).starts_with("digraph G {\n"));
  EXPECT_TRUE(text::read_file(path("deg.csv")).starts_with("node,in_degree,out_degree\n"));
  EXPECT_NE(run("eval --inferred " + path("b.edges") + " --format gml --out " + path("x")), 0);
}

TEST_F(CliTest, SweepResumeAndCurve) {
  ASSERT_EQ(run("gen-graph --power 4 --edges 24 --seed 1 --matrix 0.9,0.6,0.4,0.2 --out " + path("g.graph")), 0);
  fs::create_directories(dir_ / "data");
  for (int i = 0; i < 3; ++i)
    ASSERT_EQ(run("simulate --graph " + path("g.graph") + " --count " + std::to_string(20 + 10 * i) +
                  " --seed " + std::to_string(i) + " --out " + path("data/s" + std::to_string(i) + ".cascades")),
              0);
  const std::string sweep = "sweep --datasets '" + path("data/*.cascades") +
                            "' --ks 5,50,500 --workers 2 --out-dir " + path("out");
  ASSERT_EQ(run(sweep), 0) << output();
  EXPECT_NE(output().find("tasks=9 completed=9 failed=0"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("out/s1.k50.edges")));

  fs::remove(path("out/s2.k500.edges"));
  ASSERT_EQ(run(sweep + " --resume"), 0);
  const auto log = text::read_file(path("out/sweep.log"));
  std::size_t starts = 0, skips = 0;
  std::istringstream lines(log);
  for (std::string line; std::getline(lines, line);) {
    starts += line.find(",start,") != std::string::npos;
    skips += line.find(",skip,") != std::string::npos;
  }
  EXPECT_EQ(starts, 10u);
  EXPECT_EQ(skips, 8u);

  ASSERT_EQ(run("curve --dir " + path("out") + " --out " + path("curve.csv")), 0) << output();
  const auto curve = text::read_file(path("curve.csv"));
  EXPECT_TRUE(curve.starts_with("dataset,k,edges_found\ns0,5,5\ns0,50,"));
}

TEST_F(CliTest, IngestWritesStatsAndCascades) {
  Rng rng(1);
  const auto log = oracle::synthetic_log(rng, {2, 3, 5, 8, 1}, 4, 0.25);
  {
    std::ofstream out(path("log.csv"));
    ingest::write_submissions(out, log);
  }
  ASSERT_EQ(run("ingest --in " + path("log.csv") + " --min-length 3 --stats-out " + path("s.csv") +
                " --stats-range 2,4 --cascades-out " + path("r.cascades")),
            0)
      << output();
  EXPECT_NE(output().find("dropped=4"), std::string::npos);
  EXPECT_EQ(text::read_file(path("s.csv")),
            "min_length,avg_length,contagions,transmissions\n2,4.5,4,18\n3,5.3,3,16\n4,6.5,2,13\n");
  const auto set = load_cascades(path("r.cascades"));
  EXPECT_LE(set.cascades.size(), 3u);
  EXPECT_NE(run("ingest --in " + path("missing.csv") + " --min-length 3 --stats-out " + path("s.csv") +
                " --cascades-out " + path("r.cascades")),
            0);
}
