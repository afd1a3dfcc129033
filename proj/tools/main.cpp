// predel: weighted empirical-likelihood inference for predictive regressions.
//
// Subcommands:
//   test      EL test of H0: slope = beta0 on a date,y,x series
//   ci        EL confidence interval plus the least-squares baseline fit
//   simulate  Monte Carlo rejection frequencies over a simulation grid

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <predel/predel.hpp>

namespace {

using nlohmann::json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Statistic values serialize as numbers except the +infinity sentinel,
/// which becomes the string "inf" (JSON has no infinity literal).
json stat_to_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

predel::RegressionSample load_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file: " + path);
  return predel::to_regression_sample(predel::load_series(in));
}

predel::InterceptMode parse_mode(const std::string& mode) {
  return mode == "known" ? predel::InterceptMode::Known : predel::InterceptMode::Unknown;
}

struct TestOptions {
  std::string file;
  double beta0 = 0.0;
  double level = 0.10;  // significance
  std::string mode = "unknown";
  double h = 2.0;
  bool as_json = false;
};

int cmd_test(const TestOptions& opt) {
  const predel::RegressionSample sample = load_sample(opt.file);
  const predel::InterceptMode mode = parse_mode(opt.mode);
  const predel::ElTestDecision d =
      predel::el_test(sample, opt.beta0, 1.0 - opt.level, predel::WeightSpec(opt.h), mode);

  if (opt.as_json) {
    json out{{"command", "test"},
             {"n", sample.n()},
             {"beta0", opt.beta0},
             {"significance", opt.level},
             {"mode", opt.mode},
             {"h", opt.h},
             {"statistic", stat_to_json(d.detail.statistic)},
             {"critical_value", d.critical_value},
             {"p_value", d.detail.p_value},
             {"hull_ok", d.detail.hull_ok},
             {"reject", d.reject}};
    if (d.detail.hull_ok) out["lambda"] = d.detail.lambda;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "n: " << sample.n() << "  (intercept " << opt.mode << ")\n";
  std::cout << "H0: beta = " << fmt("%g", opt.beta0) << "\n";
  if (d.detail.hull_ok) {
    std::cout << "statistic: " << fmt("%.10g", d.detail.statistic) << "\n";
  } else {
    std::cout << "statistic: inf  (scores one-signed: beta0 outside every "
                 "achievable configuration)\n";
  }
  std::cout << "p-value: " << fmt("%.10g", d.detail.p_value) << "\n";
  std::cout << "critical value at significance " << fmt("%g", opt.level) << ": "
            << fmt("%.10g", d.critical_value) << "\n";
  std::cout << "decision: " << (d.reject ? "reject" : "do not reject") << "\n";
  return 0;
}

struct CiOptions {
  std::string file;
  double level = 0.90;  // confidence
  std::string mode = "unknown";
  double h = 2.0;
  std::size_t p = 0;
  bool as_json = false;
};

int cmd_ci(const CiOptions& opt) {
  const predel::RegressionSample sample = load_sample(opt.file);
  const predel::InterceptMode mode = parse_mode(opt.mode);
  const predel::ConfidenceSet ci =
      predel::confidence_set(sample, opt.level, predel::WeightSpec(opt.h), mode);
  const double beta_lse = predel::lse_beta(sample);
  const predel::LseFit fit = predel::fit_full_model(sample, opt.p);
  const double ratio = fit.sigma_v / fit.sigma_u;

  if (opt.as_json) {
    json out{{"command", "ci"},
             {"n", sample.n()},
             {"level", ci.level},
             {"mode", opt.mode},
             {"h", opt.h},
             {"lower", ci.lower},
             {"upper", ci.upper},
             {"disconnected", ci.disconnected},
             {"beta_lse", beta_lse},
             {"sigma_u", fit.sigma_u},
             {"sigma_v", fit.sigma_v},
             {"sigma_ratio", ratio}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "n: " << sample.n() << "  (intercept " << opt.mode << ")\n";
  std::cout << "confidence level: " << fmt("%g", ci.level) << "\n";
  std::cout << "interval: [" << fmt("%.10g", ci.lower) << ", " << fmt("%.10g", ci.upper)
            << "]\n";
  if (ci.disconnected)
    std::cout << "warning: underlying confidence set is not a single interval; "
                 "the bracketing interval is reported\n";
  std::cout << "beta (least squares): " << fmt("%.10g", beta_lse) << "\n";
  std::cout << "sigma_v / sigma_u: " << fmt("%.10g", ratio) << "\n";
  return 0;
}

struct SimulateOptions {
  std::string grid_file;
  std::string out_base;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  double h = 2.0;
  std::size_t bootstrap_reps = 1000;
};

std::string report_tsv_row(const predel::ExperimentReport& r) {
  std::ostringstream row;
  row << fmt("%g", r.a) << '\t' << fmt("%g", r.phi) << '\t' << fmt("%g", r.nu) << '\t'
      << fmt("%g", r.b1) << '\t' << r.n << '\t' << fmt("%g", r.level) << '\t' << r.method
      << '\t' << r.replications << '\t' << fmt("%.6f", r.frequency) << '\t'
      << fmt("%.6f", r.mc_se) << '\t' << r.anomalies;
  return row.str();
}

json report_to_json(const predel::ExperimentReport& r) {
  return json{{"a", r.a},
              {"phi", r.phi},
              {"nu", r.nu},
              {"b1", r.b1},
              {"n", r.n},
              {"level", r.level},
              {"method", r.method},
              {"reps", r.replications},
              {"rejections", r.rejections},
              {"frequency", r.frequency},
              {"se", r.mc_se},
              {"anomalies", r.anomalies}};
}

int cmd_simulate(const SimulateOptions& opt) {
  std::ifstream in(opt.grid_file);
  if (!in) throw std::runtime_error("cannot open grid file: " + opt.grid_file);
  const std::vector<predel::GridCell> cells = predel::parse_grid(in);
  if (cells.empty()) throw std::runtime_error("grid file lists no cells");
  if (opt.reps < 100)
    throw std::runtime_error("--reps must be at least 100 (got " +
                             std::to_string(opt.reps) + ")");

  // Validation above happens before any output file is touched.
  std::vector<predel::ExperimentReport> rows;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    predel::DgpConfig config = cells[ci].config;
    config.seed = predel::child_seed(opt.seed, ci);  // methods share samples per cell
    for (const predel::TestMethod m : cells[ci].methods) {
      predel::ExperimentReport r =
          predel::run_experiment(config, m, cells[ci].level, opt.reps, opt.threads,
                                 predel::WeightSpec(opt.h), opt.bootstrap_reps);
      std::cout << report_tsv_row(r) << "\n" << std::flush;
      rows.push_back(std::move(r));
    }
  }

  const std::string tsv_path = opt.out_base + ".tsv";
  std::ofstream tsv(tsv_path);
  if (!tsv) throw std::runtime_error("cannot write " + tsv_path);
  tsv << "a\tphi\tnu\tb1\tn\tlevel\tmethod\treps\tfrequency\tse\tanomalies\n";
  for (const auto& r : rows) tsv << report_tsv_row(r) << "\n";
  tsv.close();

  const std::string json_path = opt.out_base + ".json";
  std::ofstream jf(json_path);
  if (!jf) throw std::runtime_error("cannot write " + json_path);
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(report_to_json(r));
  jf << arr.dump(2) << "\n";
  jf.close();

  std::cout << "wrote " << tsv_path << " and " << json_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Weighted empirical-likelihood tests and confidence intervals for the "
      "slope of a predictive regression"};
  app.require_subcommand(1);
  // The weight exponent flag is --h, so the short help alias must go.
  app.set_help_flag("--help", "Print this help message and exit");

  TestOptions topt;
  CLI::App* test = app.add_subcommand("test", "Test H0: slope = beta0 on a CSV series");
  test->set_help_flag("--help", "Print this help message and exit");
  test->add_option("file", topt.file, "CSV series with header date,y,x")->required();
  test->add_option("--beta0", topt.beta0, "Hypothesized slope (default 0)");
  test->add_option("--level", topt.level, "Significance level (default 0.10)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  test->add_option("--mode", topt.mode, "Intercept handling (default unknown)")
      ->check(CLI::IsMember({"known", "unknown"}));
  test->add_option("--h", topt.h, "Weight exponent (default 2)")
      ->check(CLI::PositiveNumber);
  test->add_flag("--json", topt.as_json, "Emit JSON instead of text");

  CiOptions copt;
  CLI::App* ci = app.add_subcommand("ci", "Confidence interval for the slope");
  ci->set_help_flag("--help", "Print this help message and exit");
  ci->add_option("file", copt.file, "CSV series with header date,y,x")->required();
  ci->add_option("--level", copt.level, "Confidence level (default 0.90)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  ci->add_option("--mode", copt.mode, "Intercept handling (default unknown)")
      ->check(CLI::IsMember({"known", "unknown"}));
  ci->add_option("--h", copt.h, "Weight exponent (default 2)")
      ->check(CLI::PositiveNumber);
  ci->add_option("--p", copt.p, "AR order of the baseline error recursion (default 0)");
  ci->add_flag("--json", copt.as_json, "Emit JSON instead of text");

  SimulateOptions sopt;
  CLI::App* sim = app.add_subcommand("simulate", "Run a Monte Carlo grid");
  sim->set_help_flag("--help", "Print this help message and exit");
  sim->add_option("grid", sopt.grid_file, "Grid file: `a phi nu b1 n level methods` per line")
      ->required();
  sim->add_option("--out", sopt.out_base, "Output base path (writes .tsv and .json)")
      ->required();
  sim->add_option("--reps", sopt.reps, "Replications per cell (default 10000, min 100)");
  sim->add_option("--seed", sopt.seed, "Master seed (default 1)");
  sim->add_option("--threads", sopt.threads, "Worker threads (default: hardware)");
  sim->add_option("--h", sopt.h, "Weight exponent for the EL methods (default 2)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--bootstrap-reps", sopt.bootstrap_reps,
                  "Resamples per bootstrap test (default 1000)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (test->parsed()) return cmd_test(topt);
    if (ci->parsed()) return cmd_ci(copt);
    return cmd_simulate(sopt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
