#pragma once

#include <cstddef>
#include <vector>

#include "sheetwalk/rng.hpp"

namespace sheetwalk {

// Linearly interpolated quantile (R type 7) of an unsorted sample.
// Throws on empty input or p outside [0,1].
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 for n < 2
  std::size_t count = 0;
};
MeanVar mean_and_variance(const std::vector<double>& values);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 1.0;
};
// Ordinary least squares of y on x; needs >= 2 points with non-constant x.
// r_squared defined as 1 when the residual and total sums are both ~0.
OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided Kolmogorov-Smirnov statistic of a sample against N(0,1).
double ks_normal_statistic(std::vector<double> sample);

// Asymptotic two-sided KS critical value at a given level: c(a)/sqrt(n),
// c(a) = sqrt(-ln(a/2)/2).
double ks_critical_value(double level, std::size_t n);

// Bootstrap standard error of the sample median (resamples drawn from the
// given stream, so the estimate itself is reproducible).
double bootstrap_stderr_median(const std::vector<double>& values,
                               int resamples, RngStream& stream);

}  // namespace sheetwalk
