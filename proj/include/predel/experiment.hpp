#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "predel/bootstrap.hpp"
#include "predel/dgp.hpp"
#include "predel/el.hpp"
#include "predel/parallel.hpp"
#include "predel/rng.hpp"

namespace predel {

/// The three test procedures the Monte Carlo harness compares:
/// the known-intercept EL test (el1), the intercept-robust differenced EL
/// test (el2), and the residual-bootstrap least-squares test (boot).
enum class TestMethod { ElKnown, ElUnknown, BootstrapLse };

inline std::string_view method_name(TestMethod m) {
  switch (m) {
    case TestMethod::ElKnown: return "el1";
    case TestMethod::ElUnknown: return "el2";
    case TestMethod::BootstrapLse: return "boot";
  }
  throw std::invalid_argument("method_name: unknown method");
}

inline std::optional<TestMethod> parse_method(std::string_view token) {
  if (token == "el1") return TestMethod::ElKnown;
  if (token == "el2") return TestMethod::ElUnknown;
  if (token == "boot") return TestMethod::BootstrapLse;
  return std::nullopt;
}

/// One Monte Carlo result row. frequency is rejections over valid
/// replications (replications - anomalies) and mc_se the binomial standard
/// error on the same denominator; anomalies counts replications whose test
/// threw, reported rather than silently dropped.
struct ExperimentReport {
  double a = 0.0;
  double phi = 1.0;
  double nu = 4.0;
  double b1 = 0.0;
  std::size_t n = 0;
  double level = 0.0;
  std::string method;
  std::size_t replications = 0;
  std::size_t rejections = 0;
  std::size_t anomalies = 0;
  double frequency = 0.0;
  double mc_se = 0.0;
};

/// @brief Core replication loop shared by all methods.
///
/// decide(sample, config) returns the rejection decision for one generated
/// sample. Replication r regenerates from seed child_seed(config.seed, r),
/// so results do not depend on thread count or completion order; the only
/// cross-thread state is a pair of counters.
template <typename Decide>
ExperimentReport run_experiment_with(const DgpConfig& config, double level,
                                     std::size_t replications, unsigned threads,
                                     Decide&& decide, std::string method_label) {
  if (replications < 100)
    throw std::invalid_argument("run_experiment: need at least 100 replications");
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("run_experiment: level must lie in (0, 1)");
  validate(config);

  std::atomic<std::size_t> rejections{0}, anomalies{0};
  parallel_for(replications, threads, [&](std::size_t r) {
    DgpConfig c = config;
    c.seed = child_seed(config.seed, r);
    try {
      if (decide(gen_sample(c), c)) rejections.fetch_add(1);
    } catch (const std::exception&) {
      anomalies.fetch_add(1);
    }
  });

  ExperimentReport rep;
  rep.a = config.a;
  rep.phi = config.phi;
  rep.nu = config.nu;
  rep.b1 = config.b.empty() ? 0.0 : config.b[0];
  rep.n = config.n;
  rep.level = level;
  rep.method = std::move(method_label);
  rep.replications = replications;
  rep.rejections = rejections.load();
  rep.anomalies = anomalies.load();
  const std::size_t valid = replications - rep.anomalies;
  if (valid == 0)
    throw DegenerateSampleError("run_experiment: every replication failed");
  rep.frequency = static_cast<double>(rep.rejections) / static_cast<double>(valid);
  rep.mc_se = std::sqrt(rep.frequency * (1.0 - rep.frequency) / static_cast<double>(valid));
  return rep;
}

/// Stream id for the bootstrap's own randomness within one replication,
/// kept distinct from the child streams used for sample generation.
inline constexpr std::uint64_t kBootstrapStream = 0x626f6f74u;

/// @brief Rejection frequency of one method on one simulation cell.
///
/// All methods test H0: slope = 0 at significance `level`; the EL variants
/// use the chi-square quantile of order 1 - level. The bootstrap runs
/// serially inside each replication (replications parallelize instead).
inline ExperimentReport run_experiment(const DgpConfig& config, TestMethod method,
                                       double level, std::size_t replications,
                                       unsigned threads = 1,
                                       const WeightSpec& weight = WeightSpec(),
                                       std::size_t bootstrap_resamples = 1000) {
  const double b = 1.0 - level;
  switch (method) {
    case TestMethod::ElKnown:
      return run_experiment_with(
          config, level, replications, threads,
          [&weight, b](const RegressionSample& s, const DgpConfig&) {
            return el_test(s, 0.0, b, weight, InterceptMode::Known).reject;
          },
          std::string(method_name(method)));
    case TestMethod::ElUnknown:
      return run_experiment_with(
          config, level, replications, threads,
          [&weight, b](const RegressionSample& s, const DgpConfig&) {
            return el_test(s, 0.0, b, weight, InterceptMode::Unknown).reject;
          },
          std::string(method_name(method)));
    case TestMethod::BootstrapLse:
      return run_experiment_with(
          config, level, replications, threads,
          [level, bootstrap_resamples](const RegressionSample& s, const DgpConfig& c) {
            return bootstrap_lse_test(s, c.b.size(), level, bootstrap_resamples,
                                      child_seed(c.seed, kBootstrapStream), 1, 0.0)
                .reject;
          },
          std::string(method_name(method)));
  }
  throw std::invalid_argument("run_experiment: unknown method");
}

/// One parsed grid line: a simulation cell plus the methods to run on it.
struct GridCell {
  DgpConfig config;
  double level = 0.10;
  std::vector<TestMethod> methods;
};

/// @brief Parses a simulation grid.
///
/// One cell per line: `a phi nu b1 n level methods` with methods a
/// comma-separated subset of el1,el2,boot. `#` starts a comment; blank
/// lines are skipped. Errors carry 1-based line numbers and abort the whole
/// parse, so nothing downstream starts on a half-read grid. Unstated design
/// parameters keep their defaults (alpha = 0, theta = 0, delta = -0.75,
/// x0 = 0); seeds are assigned by the runner, not the file.
inline std::vector<GridCell> parse_grid(std::istream& in) {
  std::vector<GridCell> cells;
  std::string line;
  std::size_t lineno = 0;
  const auto fail = [&lineno](const std::string& msg) {
    throw std::invalid_argument("grid line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n\v\f") == std::string::npos) continue;
    std::istringstream fields(line);
    double a, phi, nu, b1, level;
    long long n;
    std::string methods;
    if (!(fields >> a >> phi >> nu >> b1 >> n >> level >> methods))
      fail("expected `a phi nu b1 n level methods`");
    std::string extra;
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    if (n < 4) fail("n must be at least 4");
    if (!(level > 0.0) || !(level < 1.0)) fail("level must lie in (0, 1)");

    GridCell cell;
    cell.config.a = a;
    cell.config.phi = phi;
    cell.config.nu = nu;
    // The study's error recursion is always first order; b1 = 0 still means
    // "fit AR(1) in the bootstrap", so the coefficient is kept explicitly.
    cell.config.b = {b1};
    cell.config.n = static_cast<std::size_t>(n);
    cell.level = level;
    try {
      validate(cell.config);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    std::string token;
    std::istringstream mlist(methods);
    while (std::getline(mlist, token, ',')) {
      const auto m = parse_method(token);
      if (!m) fail("unknown method '" + token + "' (expected el1, el2, or boot)");
      cell.methods.push_back(*m);
    }
    if (cell.methods.empty()) fail("no methods listed");
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace predel
