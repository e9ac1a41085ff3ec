#include "sheetwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sheetwalk {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must lie in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

MeanVar mean_and_variance(const std::vector<double>& values) {
  MeanVar out;
  out.count = values.size();
  if (values.empty()) return out;
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  out.mean = mean;
  out.variance = (k > 1) ? m2 / static_cast<double>(k - 1) : 0.0;
  return out;
}

OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_fit: need >= 2 (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("ols_fit: x values must not be constant");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += r * r;
  }
  fit.stderr_slope = (x.size() > 2) ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  // Pure power laws hit ssr ~ syy ~ 0; call that a perfect fit.
  fit.r_squared = (syy > 1e-300) ? 1.0 - ssr / syy : 1.0;
  if (fit.r_squared < 0.0) fit.r_squared = 0.0;
  if (fit.r_squared > 1.0) fit.r_squared = 1.0;
  return fit;
}

double ks_normal_statistic(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_normal_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf(sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double ks_critical_value(double level, std::size_t n) {
  if (!(level > 0.0 && level < 1.0) || n == 0) {
    throw std::invalid_argument("ks_critical_value: need 0 < level < 1 and n > 0");
  }
  return std::sqrt(-std::log(level / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

double bootstrap_stderr_median(const std::vector<double>& values,
                               int resamples, RngStream& stream) {
  if (values.empty() || resamples < 2) {
    throw std::invalid_argument("bootstrap_stderr_median: empty sample or resamples < 2");
  }
  std::vector<double> medians(static_cast<std::size_t>(resamples));
  std::vector<double> draw(values.size());
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t j = static_cast<std::size_t>(
          stream.next_u64() % static_cast<std::uint64_t>(values.size()));
      draw[i] = values[j];
    }
    medians[static_cast<std::size_t>(b)] = median(draw);
  }
  const MeanVar mv = mean_and_variance(medians);
  return std::sqrt(mv.variance);
}

}  // namespace sheetwalk
