#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "fixtures.hpp"
#include "kra/error.hpp"
#include "kra/matrix.hpp"

namespace kra::cli {
namespace {

namespace fs = std::filesystem;
using testing_support::slurp;
using testing_support::TempDir;

const fs::path kData = KRA_DATA_DIR;

int run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" KRA_CLI_PATH "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_files(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

TEST(Grid, ParseAndDefaults) {
  EXPECT_EQ(parse_grid("5x3").rows, 5u);
  EXPECT_EQ(parse_grid("5x3").cols, 3u);
  EXPECT_EQ(parse_grid("1X4").cols, 4u);
  for (const char* bad : {"", "5", "x3", "5x", "0x3", "ax3", "5x3x2", "-1x2"})
    EXPECT_THROW(parse_grid(bad), UsageError) << bad;
  EXPECT_EQ(default_grid(10).rows, 5u);
  EXPECT_EQ(default_grid(10).cols, 2u);
  EXPECT_EQ(default_grid(3).rows, 1u);
  EXPECT_EQ(default_grid(3).cols, 3u);
}

TEST(Config, ValidateAndSweep) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(run_cluster_counts(c), (std::vector<std::size_t>{10}));
  c.sweep = true;
  EXPECT_EQ(run_cluster_counts(c), (std::vector<std::size_t>{10, 15, 20}));
  c.sweep = false;
  c.algorithm = Algorithm::som;
  c.grid = GridShape{2, 3};
  EXPECT_EQ(run_cluster_counts(c), (std::vector<std::size_t>{6}));

  for (auto mutate : std::vector<void (*)(RunConfig&)>{
           [](RunConfig& r) { r.threshold = 1.5; }, [](RunConfig& r) { r.k = 0; },
           [](RunConfig& r) { r.timeout_min = 0; }, [](RunConfig& r) { r.min_views = 0; },
           [](RunConfig& r) { r.max_iter = 0; }}) {
    RunConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.validate(), UsageError);
  }
}

TEST(Preprocess, BundledLog) {
  TempDir dir("pre");
  RunConfig c;
  c.input = kData / "synthetic_log.csv";
  c.out = dir.path();
  std::ostringstream log;
  cmd_preprocess(c, log);
  std::istringstream in(slurp(dir.path() / "matrix.csv"));
  const auto m = read_matrix_csv(in);
  EXPECT_EQ(m.rows(), 29u);
  EXPECT_EQ(m.cols(), 15u);
  EXPECT_TRUE(fs::exists(dir.path() / "sessions.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "preprocess.json"));
  EXPECT_NE(log.str().find("3 skipped"), std::string::npos);
  EXPECT_NE(log.str().find("warning:"), std::string::npos);
}

TEST(Preprocess, NothingSurvivesIsNotAnError) {
  TempDir dir("empty");
  const auto log_path = dir.path() / "short.csv";
  std::ofstream(log_path) << "timestamp,visitor_id,url\n1,a,/x\n2,a,/y\n100,b,/x\n";
  RunConfig c;
  c.input = log_path;
  c.out = dir.path() / "out";
  std::ostringstream log;
  EXPECT_EQ(guarded([&] { cmd_preprocess(c, log); }, log), kExitOk);
  std::istringstream in(slurp(c.out / "matrix.csv"));
  EXPECT_EQ(read_matrix_csv(in).rows(), 0u);
  EXPECT_NE(log.str().find("matrix is empty"), std::string::npos);

  // Running on the empty matrix is a data error.
  RunConfig r;
  r.out = c.out;
  r.k = 2;
  std::ostringstream err;
  EXPECT_EQ(guarded([&] { cmd_run(r, log); }, err), kExitData);
}

TEST(Preprocess, MissingInputWritesNothing) {
  TempDir dir("missing");
  RunConfig c;
  c.input = dir.path() / "nope.csv";
  c.out = dir.path() / "out";
  std::ostringstream log;
  EXPECT_THROW(cmd_preprocess(c, log), UsageError);
  EXPECT_EQ(count_files(c.out), 0u);
  std::ostringstream err;
  EXPECT_EQ(guarded([&] { cmd_preprocess(c, log); }, err), kExitUsage);
  EXPECT_NE(err.str().find("nope.csv"), std::string::npos);
}

TEST(Preprocess, BadHeaderIsDataError) {
  TempDir dir("hdr");
  const auto log_path = dir.path() / "bad.csv";
  std::ofstream(log_path) << "when,who,what\n1,a,/x\n";
  RunConfig c;
  c.input = log_path;
  c.out = dir.path() / "out";
  std::ostringstream log, err;
  EXPECT_EQ(guarded([&] { cmd_preprocess(c, log); }, err), kExitData);
  EXPECT_EQ(count_files(c.out), 0u);
}

RunConfig planted_run(const fs::path& out, Algorithm alg) {
  RunConfig c;
  c.input = kData / "planted_matrix.csv";
  c.labels = kData / "planted_labels.csv";
  c.out = out;
  c.algorithm = alg;
  c.k = 3;
  c.seed = 7;
  if (alg == Algorithm::som) c.grid = GridShape{1, 3};
  return c;
}

std::map<std::string, std::string> read_metrics(const fs::path& p) {
  std::map<std::string, std::string> out;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) out[line.substr(0, line.find(','))] = line;
  return out;
}

std::pair<double, double> column_values(const std::string& line) {
  const auto a = line.find(',');
  const auto b = line.find(',', a + 1);
  return {std::stod(line.substr(a + 1, b - a - 1)), std::stod(line.substr(b + 1))};
}

TEST(Run, PlantedFixtureImproves) {
  for (const auto alg : {Algorithm::kmeans, Algorithm::som}) {
    TempDir dir("run");
    std::ostringstream log;
    cmd_run(planted_run(dir.path(), alg), log);
    const std::string tag = alg == Algorithm::kmeans ? "kmeans-k3" : "som-k3";
    const auto metrics = read_metrics(dir.path() / ("metrics-" + tag + ".csv"));
    const auto [db0, db1] = column_values(metrics.at("db"));
    const auto [dunn0, dunn1] = column_values(metrics.at("dunn"));
    const auto [f0, f1] = column_values(metrics.at("f_measure"));
    EXPECT_LE(db1, db0) << tag;
    EXPECT_GE(dunn1, dunn0) << tag;
    EXPECT_GE(f1, f0) << tag;
    EXPECT_TRUE(fs::exists(dir.path() / ("assignments-" + tag + ".csv")));
    EXPECT_TRUE(fs::exists(dir.path() / ("refinement-" + tag + ".json")));
    EXPECT_TRUE(fs::exists(dir.path() / ("metrics-" + tag + ".json")));
    EXPECT_TRUE(fs::exists(dir.path() / (alg == Algorithm::kmeans ? "assignments-kmeans-k3.json"
                                                                   : "som-grid-som-k3.json")));
  }
}

TEST(Run, DumpSdmAndSweep) {
  TempDir dir("sweep");
  auto c = planted_run(dir.path(), Algorithm::kmeans);
  c.dump_sdm = true;
  std::ostringstream log;
  cmd_run(c, log);
  EXPECT_TRUE(fs::exists(dir.path() / "sdm-kmeans-k3-c0.csv"));

  c.dump_sdm = false;
  c.sweep = true;
  cmd_run(c, log);
  for (const char* k : {"10", "15", "20"})
    EXPECT_TRUE(fs::exists(dir.path() / (std::string("metrics-kmeans-k") + k + ".csv"))) << k;
}

TEST(Run, TooManyClustersIsDataError) {
  TempDir dir("bigk");
  auto c = planted_run(dir.path(), Algorithm::kmeans);
  c.k = 500;
  std::ostringstream log, err;
  EXPECT_EQ(guarded([&] { cmd_run(c, log); }, err), kExitData);
}

TEST(Binary, ExitCodes) {
  TempDir dir("bin");
  const std::string out = " --out \"" + dir.path().string() + "\"";
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary(""), 1);
  EXPECT_EQ(run_binary("run --k nope"), 1);
  EXPECT_EQ(run_binary("run --algorithm banana"), 1);
  EXPECT_EQ(run_binary("preprocess --input /does/not/exist.csv" + out), 1);
  EXPECT_EQ(run_binary("preprocess --input \"" + (kData / "synthetic_log.csv").string() + "\"" + out), 0);
  EXPECT_EQ(run_binary("run --k 3 --seed 7" + out), 0);
  EXPECT_EQ(run_binary("run --k 3 --threshold 2" + out), 1);
  EXPECT_EQ(run_binary("run --k 1000" + out), 2);
}

TEST(Binary, SeedFromEnvironment) {
  TempDir a("envA"), b("envB");
  const std::string in = " --input \"" + (kData / "planted_matrix.csv").string() + "\" --k 3";
  ASSERT_EQ(run_binary("run" + in + " --seed 9 --out \"" + a.path().string() + "\""), 0);
  ASSERT_EQ(run_binary("run" + in + " --out \"" + b.path().string() + "\"", "KRA_SEED=9"), 0);
  EXPECT_EQ(slurp(a.path() / "assignments-kmeans-k3.csv"), slurp(b.path() / "assignments-kmeans-k3.csv"));
  EXPECT_NE(slurp(b.path() / "assignments-kmeans-k3.json").find("\"seed\": 9"), std::string::npos);
}

TEST(Binary, ConfigFile) {
  TempDir dir("cfg");
  const auto cfg = dir.path() / "kra.toml";
  std::ofstream(cfg) << "[run]\nk = 3\nseed = 5\nalgorithm = \"som\"\ngrid = \"1x3\"\n";
  ASSERT_EQ(run_binary("--config \"" + cfg.string() + "\" run --input \"" +
                       (kData / "planted_matrix.csv").string() + "\" --out \"" + dir.path().string() + "\""),
            0);
  EXPECT_TRUE(fs::exists(dir.path() / "som-grid-som-k3.json"));
}

}  // namespace
}  // namespace kra::cli
