#pragma once

#include <cstdint>
#include <vector>

#include "sheetwalk/sheet.hpp"
#include "sheetwalk/stats.hpp"

namespace sheetwalk {

struct RateExperimentConfig {
  double lambda = 0.19;
  double beta = 0.08;        // tail exponent, must satisfy 0 < beta < lambda/2
  double alpha = 0.0;        // threshold constant; <= 0 means auto (see below)
  std::vector<std::uint64_t> n_list = {1024, 4096, 16384, 65536};
  int replicas = 200;
  int m = 8;
  int t_grid_size = 1024;
  std::uint64_t master_seed = 42;

  void validate() const;  // throws std::invalid_argument
};

struct TailEstimate {
  std::uint64_t n = 0;
  double threshold = 0.0;  // alpha * n^-beta
  double tail = 0.0;       // fraction of replicas strictly above threshold
  double stderr_ = 0.0;    // binomial standard error
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
};

struct SheetReplicaRecord {
  std::uint64_t n = 0;
  int replica = 0;
  double sup_error = 0.0;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

struct SheetRateSummaryRow {
  std::uint64_t n = 0;
  double median_sup = 0.0, q90_sup = 0.0;
  double median_p1 = 0.0, median_p2 = 0.0, median_p3 = 0.0;
};

struct SheetRateResult {
  RateExperimentConfig config;
  double alpha_resolved = 0.0;
  std::vector<SheetReplicaRecord> records;   // ordered by (n, replica)
  std::vector<SheetRateSummaryRow> summary;  // one row per n
  std::vector<TailEstimate> tails;           // one row per n
  RateFit fit;                               // log-log fit of median sup-error
};

// Fraction of errors strictly greater than threshold, with binomial stderr.
// Throws on an empty sample.
TailEstimate tail_probability(const std::vector<double>& errors, double threshold);

// OLS of log(value) on log(n); needs >= 3 points with distinct n and positive
// values. Exact on pure power laws (r_squared = 1).
RateFit fit_rate(const std::vector<std::pair<std::uint64_t, double>>& points);

// Full sweep: per-(n, replica) sup-error and decomposition, per-n medians and
// tail estimates against alpha * n^-beta, and the rate fit of the median.
// When config.alpha <= 0 it resolves to 2x the median sup-error at the
// smallest n. Deterministic given master_seed, independent of thread count.
SheetRateResult sheet_rate_experiment(const RateExperimentConfig& config,
                                      int threads = 0);

}  // namespace sheetwalk
