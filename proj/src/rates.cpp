#include "sheetwalk/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "sheetwalk/parallel.hpp"

namespace sheetwalk {

void RateExperimentConfig::validate() const {
  SheetConfig probe;
  probe.n = n_list.empty() ? 1 : n_list.front();
  probe.lambda = lambda;
  probe.m = m;
  probe.t_grid_size = t_grid_size;
  probe.validate();
  if (!(beta > 0.0 && beta < lambda / 2.0)) {
    throw std::invalid_argument(
        "rate config: beta must satisfy 0 < beta < lambda/2; the tail "
        "exponent cannot reach the strip-exponent bound");
  }
  if (n_list.empty()) throw std::invalid_argument("rate config: empty n_list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("rate config: n_list must be strictly ascending");
    }
  }
  if (replicas < 1) throw std::invalid_argument("rate config: replicas must be >= 1");
}

TailEstimate tail_probability(const std::vector<double>& errors, double threshold) {
  if (errors.empty()) throw std::invalid_argument("tail_probability: empty sample");
  std::size_t above = 0;
  for (double e : errors) {
    if (e > threshold) ++above;
  }
  TailEstimate est;
  est.threshold = threshold;
  est.tail = static_cast<double>(above) / static_cast<double>(errors.size());
  est.stderr_ =
      std::sqrt(est.tail * (1.0 - est.tail) / static_cast<double>(errors.size()));
  return est;
}

RateFit fit_rate(const std::vector<std::pair<std::uint64_t, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_rate: need >= 3 points");
  std::vector<double> x(points.size()), y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].second <= 0.0) {
      throw std::invalid_argument("fit_rate: values must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[j].first == points[i].first) {
        throw std::invalid_argument("fit_rate: n values must be distinct");
      }
    }
    x[i] = std::log(static_cast<double>(points[i].first));
    y[i] = std::log(points[i].second);
  }
  const OlsFit ols = ols_fit(x, y);
  RateFit fit;
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  fit.stderr_slope = ols.stderr_slope;
  fit.r_squared = ols.r_squared;
  return fit;
}

SheetRateResult sheet_rate_experiment(const RateExperimentConfig& config,
                                      int threads) {
  config.validate();
  SheetRateResult result;
  result.config = config;

  const std::size_t N = config.n_list.size();
  const std::size_t R = static_cast<std::size_t>(config.replicas);
  result.records.resize(N * R);

  // Flattened (n, replica) jobs; replica r of n-index k derives its streams
  // from (master_seed, {2, k, r, ...}), so scheduling cannot change results.
  parallel_for(N * R, threads, [&](std::size_t job) {
    const std::size_t k = job / R;
    const std::size_t r = job % R;
    SheetConfig sc;
    sc.n = config.n_list[k];
    sc.lambda = config.lambda;
    sc.m = config.m;
    sc.t_grid_size = config.t_grid_size;
    const RngStream replica_stream = derive_stream(
        config.master_seed,
        {2, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(r)});
    const SheetGrid grid = build_sheet_pair(sc, replica_stream);
    SheetReplicaRecord& rec = result.records[job];
    rec.n = sc.n;
    rec.replica = static_cast<int>(r);
    rec.sup_error = sup_error(grid);
    const ErrorDecomposition d = error_decomposition(grid);
    rec.p1 = d.p1;
    rec.p2 = d.p2;
    rec.p3 = d.p3;
  });

  // Per-n aggregates.
  result.summary.resize(N);
  std::vector<std::vector<double>> sups(N);
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<double> p1(R), p2(R), p3(R);
    sups[k].resize(R);
    for (std::size_t r = 0; r < R; ++r) {
      const SheetReplicaRecord& rec = result.records[k * R + r];
      sups[k][r] = rec.sup_error;
      p1[r] = rec.p1;
      p2[r] = rec.p2;
      p3[r] = rec.p3;
    }
    SheetRateSummaryRow& row = result.summary[k];
    row.n = config.n_list[k];
    row.median_sup = median(sups[k]);
    row.q90_sup = quantile(sups[k], 0.9);
    row.median_p1 = median(p1);
    row.median_p2 = median(p2);
    row.median_p3 = median(p3);
  }

  result.alpha_resolved =
      (config.alpha > 0.0) ? config.alpha : 2.0 * result.summary.front().median_sup;

  result.tails.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double threshold =
        result.alpha_resolved *
        std::pow(static_cast<double>(config.n_list[k]), -config.beta);
    result.tails[k] = tail_probability(sups[k], threshold);
    result.tails[k].n = config.n_list[k];
  }

  if (N >= 3) {
    std::vector<std::pair<std::uint64_t, double>> pts(N);
    for (std::size_t k = 0; k < N; ++k) {
      pts[k] = {config.n_list[k], result.summary[k].median_sup};
    }
    result.fit = fit_rate(pts);
  }
  return result;
}

}  // namespace sheetwalk
