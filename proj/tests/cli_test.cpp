#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include <predel/chi_square.hpp>
#include <predel/csv.hpp>
#include <predel/el.hpp>
#include <predel/lse.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PREDEL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  RunResult r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.output += buf;
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string data_path(const std::string& name) {
  return std::string(PREDEL_TEST_DATA_DIR) + "/" + name;
}

class TempDir {
 public:
  TempDir() {
    char tmpl[] = "/tmp/predel_cli_XXXXXX";
    root_ = mkdtemp(tmpl);
  }
  ~TempDir() {
    if (root_.empty()) return;
    const int rc = std::system(("rm -rf " + root_).c_str());
    (void)rc;
  }
  std::string path(const std::string& name) const { return root_ + "/" + name; }

 private:
  std::string root_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

predel::RegressionSample fixture_sample() {
  std::ifstream in(data_path("synthetic_series.csv"));
  return predel::to_regression_sample(predel::load_series(in));
}

}  // namespace

TEST(CliTest, JsonMatchesLibraryBitForBit) {
  const RunResult r =
      run_cli("test " + data_path("synthetic_series.csv") + " --level 0.10 --json");
  ASSERT_EQ(r.status, 0) << r.output;
  const json out = json::parse(r.output);
  const auto lib = predel::el_test(fixture_sample(), 0.0, 0.90, predel::WeightSpec(2.0),
                                   predel::InterceptMode::Unknown);
  EXPECT_EQ(out.at("statistic").get<double>(), lib.detail.statistic);
  EXPECT_EQ(out.at("p_value").get<double>(), lib.detail.p_value);
  EXPECT_EQ(out.at("lambda").get<double>(), lib.detail.lambda);
  EXPECT_EQ(out.at("critical_value").get<double>(), lib.critical_value);
  EXPECT_EQ(out.at("reject").get<bool>(), lib.reject);
  EXPECT_EQ(out.at("hull_ok").get<bool>(), true);
  EXPECT_EQ(out.at("mode").get<std::string>(), "unknown");
}

TEST(CliTest, KnownModeAcceptsTrueSlopeOnNoiselessSeries) {
  TempDir tmp;
  {
    std::ofstream csv(tmp.path("line.csv"));
    csv << "date,y,x\n";
    const double xs[] = {0.5, -1.25, 2.0, 0.75, -0.375, 1.5, 0.25};
    csv << "1,0," << xs[0] << "\n";  // first y is never used
    for (int i = 1; i < 7; ++i)
      csv << i + 1 << "," << 2.0 * xs[i - 1] << "," << xs[i] << "\n";
  }
  const RunResult r =
      run_cli("test " + tmp.path("line.csv") + " --mode known --beta0 2 --json");
  ASSERT_EQ(r.status, 0) << r.output;
  const json out = json::parse(r.output);
  EXPECT_EQ(out.at("statistic").get<double>(), 0.0);
  EXPECT_EQ(out.at("p_value").get<double>(), 1.0);
  EXPECT_FALSE(out.at("reject").get<bool>());
}

TEST(CliTest, HullFailureSerializesStatisticAsInfString) {
  TempDir tmp;
  {
    std::ofstream csv(tmp.path("mono.csv"));
    csv << "date,y,x\n";
    for (int i = 0; i < 8; ++i)
      csv << i + 1 << "," << 0.01 * i << "," << 1.0 + 0.1 * i << "\n";
  }
  const RunResult r =
      run_cli("test " + tmp.path("mono.csv") + " --mode known --beta0 1000000 --json");
  ASSERT_EQ(r.status, 0) << r.output;
  const json out = json::parse(r.output);
  ASSERT_TRUE(out.at("statistic").is_string());
  EXPECT_EQ(out.at("statistic").get<std::string>(), "inf");
  EXPECT_EQ(out.at("p_value").get<double>(), 0.0);
  EXPECT_FALSE(out.at("hull_ok").get<bool>());
  EXPECT_TRUE(out.at("reject").get<bool>());
}

TEST(CliTest, ConfidenceIntervalEndpointsSitOnTheQuantile) {
  const RunResult r = run_cli("ci " + data_path("synthetic_series.csv") + " --json");
  ASSERT_EQ(r.status, 0) << r.output;
  const json out = json::parse(r.output);
  const double lower = out.at("lower").get<double>();
  const double upper = out.at("upper").get<double>();
  ASSERT_LT(lower, upper);
  const predel::RegressionSample s = fixture_sample();
  const double q = predel::chi1_quantile(0.90);
  EXPECT_NEAR(predel::log_el_ratio(s, lower).statistic, q, 1e-8);
  EXPECT_NEAR(predel::log_el_ratio(s, upper).statistic, q, 1e-8);
  EXPECT_EQ(out.at("beta_lse").get<double>(), predel::lse_beta(s));
  EXPECT_FALSE(out.at("disconnected").get<bool>());
  EXPECT_GT(out.at("sigma_ratio").get<double>(), 0.0);
}

TEST(CliTest, SimulateWritesConsistentTsvAndJson) {
  TempDir tmp;
  {
    std::ofstream grid(tmp.path("small.grid"));
    grid << "# compact smoke grid\n";
    grid << "0 1 4 0 30 0.10 el1,el2\n";
    grid << "-2 0.9 1.5 -0.5 30 0.10 el1\n";
  }
  const RunResult r = run_cli("simulate " + tmp.path("small.grid") + " --out " +
                              tmp.path("out") + " --reps 150 --seed 12 --threads 2");
  ASSERT_EQ(r.status, 0) << r.output;
  ASSERT_TRUE(file_exists(tmp.path("out.tsv")));
  ASSERT_TRUE(file_exists(tmp.path("out.json")));

  std::ifstream tsv(tmp.path("out.tsv"));
  std::string header;
  std::getline(tsv, header);
  EXPECT_EQ(header, "a\tphi\tnu\tb1\tn\tlevel\tmethod\treps\tfrequency\tse\tanomalies");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(tsv, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    ASSERT_EQ(fields.size(), 11u);
    rows.push_back(fields);
  }
  ASSERT_EQ(rows.size(), 3u);  // two methods + one method
  EXPECT_EQ(rows[0][6], "el1");
  EXPECT_EQ(rows[1][6], "el2");
  EXPECT_EQ(rows[2][6], "el1");
  EXPECT_EQ(rows[2][0], "-2");

  const json arr = json::parse(slurp(tmp.path("out.json")));
  ASSERT_TRUE(arr.is_array());
  ASSERT_EQ(arr.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(arr[i].at("method").get<std::string>(), rows[i][6]);
    EXPECT_EQ(arr[i].at("reps").get<std::size_t>(), 150u);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", arr[i].at("frequency").get<double>());
    EXPECT_EQ(rows[i][8], buf);
    const double freq = arr[i].at("frequency").get<double>();
    EXPECT_GE(freq, 0.0);
    EXPECT_LE(freq, 1.0);
  }
}

TEST(CliTest, SimulateRejectsBadInputsBeforeWritingFiles) {
  TempDir tmp;
  {
    std::ofstream grid(tmp.path("ok.grid"));
    grid << "0 1 4 0 20 0.10 el1\n";
  }
  const RunResult zero_reps = run_cli("simulate " + tmp.path("ok.grid") + " --out " +
                                      tmp.path("z") + " --reps 0");
  EXPECT_EQ(zero_reps.status, 1);
  EXPECT_NE(zero_reps.output.find("reps"), std::string::npos);
  EXPECT_FALSE(file_exists(tmp.path("z.tsv")));
  EXPECT_FALSE(file_exists(tmp.path("z.json")));

  {
    std::ofstream grid(tmp.path("bad.grid"));
    grid << "0 1 4 0 20 0.10 el1\n";
    grid << "0 1 4 0 20 0.10 warp\n";
  }
  const RunResult bad = run_cli("simulate " + tmp.path("bad.grid") + " --out " +
                                tmp.path("b") + " --reps 150");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.output.find("line 2"), std::string::npos);
  EXPECT_FALSE(file_exists(tmp.path("b.tsv")));
}

TEST(CliTest, BrokenSeriesReportsRowAndFails) {
  TempDir tmp;
  {
    std::ofstream csv(tmp.path("bad.csv"));
    csv << "date,y,x\n1,0.1,1\n2,oops,2\n";
  }
  const RunResult r = run_cli("test " + tmp.path("bad.csv"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("line 3"), std::string::npos);
}

TEST(CliTest, UsageErrorsExitNonzeroWithoutCrashing) {
  EXPECT_NE(run_cli("").status, 0);
  EXPECT_NE(run_cli("test").status, 0);
  EXPECT_NE(run_cli("test nosuchfile.csv").status, 0);
  EXPECT_NE(run_cli("ci --level 2 " + data_path("synthetic_series.csv")).status, 0);
}

TEST(CliTest, SignificanceLevelMapsToQuantileOrder) {
  const RunResult r05 =
      run_cli("test " + data_path("synthetic_series.csv") + " --level 0.05 --json");
  ASSERT_EQ(r05.status, 0);
  const json out = json::parse(r05.output);
  EXPECT_EQ(out.at("critical_value").get<double>(), predel::chi1_quantile(0.95));
  const bool reject = out.at("reject").get<bool>();
  EXPECT_EQ(reject, out.at("p_value").get<double>() < 0.05);
}
