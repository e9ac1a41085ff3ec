#include "sheetwalk/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sheetwalk/parallel.hpp"
#include "sheetwalk/quadrature.hpp"
#include "sheetwalk/stats.hpp"

namespace sheetwalk {

namespace {
constexpr double kQuadTol = 1e-9;
constexpr double kSqrt2Pi = 2.5066282746310005024;
}  // namespace

double psi(double t) {
  if (t < 0.0) throw std::invalid_argument("psi: t must be non-negative");
  if (t <= 1.0) return 0.0;
  return t * std::log(t);
}

double expected_psi_exp_gaussian(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("expected_psi_exp_gaussian: mu must be positive");
  const double L = std::log(mu);
  const auto integrand = [mu, L](double x) {
    return (std::exp(x) / mu) * (x - L) * normal_pdf(x);
  };
  return integrate(integrand, L, L + 40.0, kQuadTol).value;
}

MonteCarloEstimate monte_carlo_expected_psi(double mu, std::uint64_t samples,
                                            RngStream& stream) {
  if (!(mu > 0.0) || samples < 2) {
    throw std::invalid_argument("monte_carlo_expected_psi: need mu > 0, samples >= 2");
  }
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 1; k <= samples; ++k) {
    const double v = psi(std::exp(stream.next_normal()) / mu);
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  MonteCarloEstimate est;
  est.estimate = mean;
  est.stderr_ = std::sqrt(m2 / static_cast<double>(samples - 1) /
                          static_cast<double>(samples));
  est.samples = samples;
  return est;
}

OrliczNormResult orlicz_norm_exp_gaussian(double tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("orlicz_norm_exp_gaussian: tolerance must be positive");
  }
  double lo = 0.01, hi = 100.0;
  // The map mu -> E[psi(e^Z/mu)] must be strictly decreasing across the
  // bracket; verify before trusting bisection.
  double prev = expected_psi_exp_gaussian(lo);
  const double f_lo = prev;
  double f_hi = prev;
  const int kProbes = 100;
  for (int i = 1; i < kProbes; ++i) {
    const double mu =
        lo * std::pow(hi / lo, static_cast<double>(i) / (kProbes - 1));
    const double val = expected_psi_exp_gaussian(mu);
    if (!(val < prev)) {
      throw std::runtime_error("orlicz_norm_exp_gaussian: map not strictly decreasing");
    }
    prev = val;
    f_hi = val;
  }
  if (!(f_lo > 1.0 && f_hi < 1.0)) {
    throw std::runtime_error("orlicz_norm_exp_gaussian: bracket failure");
  }
  for (int it = 0; it < 200 && (hi - lo) > 0.25 * tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (expected_psi_exp_gaussian(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  OrliczNormResult out;
  out.mu_star = 0.5 * (lo + hi);
  out.residual = expected_psi_exp_gaussian(out.mu_star) - 1.0;
  out.method = "quadrature";
  out.tolerance = tolerance;
  return out;
}

double gaussian_tail_integral(double m) {
  const double hi = std::max(m, 0.0) + 45.0;
  const auto integrand = [m](double x) {
    const double d = x - m;
    return x * std::exp(-0.5 * d * d);
  };
  return integrate(integrand, 0.0, hi, kQuadTol).value;
}

double gaussian_tail_closed_form(double m) {
  return std::exp(-0.5 * m * m) + m * kSqrt2Pi * normal_cdf(m);
}

double gaussian_tail_alternate_form(double m) {
  return std::exp(-0.5 * m * m) + m * std::sqrt(1.5707963267948966);
}

std::vector<double> exact_sheet_values(const std::vector<double>& s_pts,
                                       const std::vector<double>& t_pts,
                                       RngStream& stream) {
  const auto check = [](const std::vector<double>& pts, const char* axis) {
    double prev = 0.0;
    for (double p : pts) {
      if (!(p > prev && p <= 1.0)) {
        throw std::invalid_argument(std::string("exact_sheet_values: ") + axis +
                                    " coordinates must be strictly ascending in (0,1]");
      }
      prev = p;
    }
  };
  check(s_pts, "s");
  check(t_pts, "t");
  const std::size_t S = s_pts.size(), T = t_pts.size();
  std::vector<double> b(S * T, 0.0);
  // Independent cell increments, then cumulative sums along both axes.
  for (std::size_t i = 0; i < S; ++i) {
    const double ds = s_pts[i] - (i == 0 ? 0.0 : s_pts[i - 1]);
    for (std::size_t j = 0; j < T; ++j) {
      const double dt = t_pts[j] - (j == 0 ? 0.0 : t_pts[j - 1]);
      b[i * T + j] = std::sqrt(ds * dt) * stream.next_normal();
    }
  }
  for (std::size_t i = 1; i < S; ++i) {
    for (std::size_t j = 0; j < T; ++j) b[i * T + j] += b[(i - 1) * T + j];
  }
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 1; j < T; ++j) b[i * T + j] += b[i * T + j - 1];
  }
  return b;
}

ExpMeanCheck exp_sheet_mean_check(double s, double t, double s2, double t2,
                                  int replicas, const RngStream& stream,
                                  int threads) {
  if (!(0.0 <= s2 && s2 <= s && s <= 1.0 && 0.0 <= t2 && t2 <= t && t <= 1.0)) {
    throw std::invalid_argument(
        "exp_sheet_mean_check: need 0 <= s2 <= s <= 1 and 0 <= t2 <= t <= 1");
  }
  if (replicas < 2) {
    throw std::invalid_argument("exp_sheet_mean_check: replicas must be >= 2");
  }
  // Minimal rectilinear lattice holding both evaluation points.
  std::vector<double> s_pts, t_pts;
  if (s2 > 0.0 && s2 < s) s_pts.push_back(s2);
  if (s > 0.0) s_pts.push_back(s);
  if (t2 > 0.0 && t2 < t) t_pts.push_back(t2);
  if (t > 0.0) t_pts.push_back(t);

  const auto value_at = [&](const std::vector<double>& b, double si,
                            double ti) -> double {
    if (si == 0.0 || ti == 0.0) return 0.0;
    const std::size_t i = static_cast<std::size_t>(
        std::lower_bound(s_pts.begin(), s_pts.end(), si) - s_pts.begin());
    const std::size_t j = static_cast<std::size_t>(
        std::lower_bound(t_pts.begin(), t_pts.end(), ti) - t_pts.begin());
    return b[i * t_pts.size() + j];
  };

  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), threads, [&](std::size_t r) {
    RngStream rep = stream.child({static_cast<std::uint64_t>(r)});
    std::vector<double> b;
    if (!s_pts.empty() && !t_pts.empty()) {
      b = exact_sheet_values(s_pts, t_pts, rep);
    }
    const double d = value_at(b, s, t) - value_at(b, s2, t2);
    values[r] = std::exp(d);
  });

  const MeanVar mv = mean_and_variance(values);
  ExpMeanCheck out;
  out.empirical = mv.mean;
  out.stderr_ = std::sqrt(mv.variance / static_cast<double>(replicas));
  out.target = std::exp(0.5 * (s * t - s2 * t2));
  out.alternate = std::exp(0.5 * (t * t2 - s * s2));
  return out;
}

std::vector<double> sheet_max_samples(int replicas, int grid_size,
                                      const RngStream& stream, int threads) {
  if (replicas < 1 || grid_size < 2) {
    throw std::invalid_argument("sheet_max_samples: need replicas >= 1, grid_size >= 2");
  }
  std::vector<double> pts(static_cast<std::size_t>(grid_size));
  for (int i = 1; i <= grid_size; ++i) {
    pts[static_cast<std::size_t>(i - 1)] =
        static_cast<double>(i) / static_cast<double>(grid_size);
  }
  std::vector<double> maxima(static_cast<std::size_t>(replicas));
  parallel_for(maxima.size(), threads, [&](std::size_t r) {
    RngStream rep = stream.child({static_cast<std::uint64_t>(r)});
    const std::vector<double> b = exact_sheet_values(pts, pts, rep);
    maxima[r] = *std::max_element(b.begin(), b.end());
  });
  return maxima;
}

ImkellerResult imkeller_ratio_experiment(const std::vector<double>& beta_list,
                                         int replicas, int grid_size,
                                         const RngStream& stream, int threads) {
  if (beta_list.empty()) {
    throw std::invalid_argument("imkeller_ratio_experiment: empty beta list");
  }
  for (double b : beta_list) {
    if (!(b > 0.0)) {
      throw std::invalid_argument("imkeller_ratio_experiment: betas must be positive");
    }
  }
  if (replicas < 2) {
    throw std::invalid_argument("imkeller_ratio_experiment: replicas must be >= 2");
  }
  ImkellerResult result;
  result.mu_star = orlicz_norm_exp_gaussian(1e-9).mu_star;
  const std::vector<double> maxima =
      sheet_max_samples(replicas, grid_size, stream, threads);
  result.rows.resize(beta_list.size());
  for (std::size_t i = 0; i < beta_list.size(); ++i) {
    const double beta = beta_list[i];
    const double log_beta = std::log(beta);
    std::size_t above = 0;
    for (double mx : maxima) {
      if (mx > log_beta) ++above;  // max exp(B) > beta  <=>  max B > log beta
    }
    ImkellerRow& row = result.rows[i];
    row.beta = beta;
    row.tail = static_cast<double>(above) / static_cast<double>(replicas);
    row.ratio = beta * row.tail / result.mu_star;
    row.stderr_ =
        std::sqrt(row.tail * (1.0 - row.tail) / static_cast<double>(replicas));
  }
  return result;
}

}  // namespace sheetwalk
