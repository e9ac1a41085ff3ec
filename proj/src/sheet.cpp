#include "sheetwalk/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sheetwalk/parallel.hpp"
#include "sheetwalk/stats.hpp"

namespace sheetwalk {

double SheetConfig::strip_count_real() const {
  return std::pow(static_cast<double>(n), lambda);
}

int SheetConfig::strip_count() const {
  return static_cast<int>(std::floor(strip_count_real()));
}

double SheetConfig::strip_width() const {
  return std::pow(static_cast<double>(n), -lambda);
}

void SheetConfig::validate() const {
  if (n == 0) throw std::invalid_argument("sheet config: n must be >= 1");
  if (!(lambda > 0.0 && lambda < 0.2)) {
    throw std::invalid_argument(
        "sheet config: lambda must lie in (0, 0.2); the strip exponent is "
        "constrained to 0 < lambda < 1/5");
  }
  if (m < 1) throw std::invalid_argument("sheet config: m must be >= 1");
  if (t_grid_size < 1) {
    throw std::invalid_argument("sheet config: t_grid_size must be >= 1");
  }
}

namespace {

// Shared build: strip pairs + approximating surface; optionally the sub-strip
// refinement of the true sheet.
SheetGrid build_impl(const SheetConfig& config, const RngStream& stream,
                     bool with_true_sheet) {
  config.validate();
  SheetGrid grid;
  grid.config = config;

  const int K = config.strip_count();
  const int m = config.m;
  const double w = config.strip_width();
  const double scale = std::pow(static_cast<double>(config.n), -config.lambda / 2.0);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));

  // t grid: t_grid_size uniform intervals, endpoints included.
  grid.t_grid = uniform_grid(config.t_grid_size + 1);
  const std::size_t T = grid.t_grid.size();

  // Refined s grid: strip width / m spacing up to K*w, then 1 if not covered.
  grid.s_grid.reserve(static_cast<std::size_t>(K * m + 2));
  for (int j = 0; j <= K * m; ++j) {
    grid.s_grid.push_back(static_cast<double>(j) * w / static_cast<double>(m));
  }
  const bool frozen_tail = K * m > 0 && grid.s_grid.back() < 1.0;
  if (frozen_tail) grid.s_grid.push_back(1.0);

  // Strip pairs and the approximating surface at strip points.
  grid.strip_pairs.reserve(static_cast<std::size_t>(K));
  grid.wn_strip.assign(static_cast<std::size_t>(K) + 1,
                       std::vector<double>(T, 0.0));
  for (int k = 1; k <= K; ++k) {
    RngStream path_stream = stream.child({static_cast<std::uint64_t>(k), 0});
    RngStream bridge_stream = stream.child({static_cast<std::uint64_t>(k), 1});
    TelegraphPath path = build_telegraph(config.n, path_stream);
    grid.strip_pairs.push_back(couple_bm(path, bridge_stream, grid.t_grid));
    const std::vector<double> strip_vals =
        eval_transport_grid(grid.strip_pairs.back().path, grid.t_grid);
    auto& prev = grid.wn_strip[static_cast<std::size_t>(k - 1)];
    auto& cur = grid.wn_strip[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < T; ++i) cur[i] = prev[i] + scale * strip_vals[i];
  }

  if (!with_true_sheet) return grid;

  // True sheet on the refined grid. Within strip k the Brownian motion B_k of
  // the coupled pair is split into m exchangeable sub-strip Brownian motions
  //   sub_j = V_j - mean(V) + B_k / sqrt(m)
  // with V_j independent auxiliary Brownian walks on the t grid; their sum is
  // sqrt(m) * B_k, so strip-level increments of W reproduce scale * B_k.
  grid.w_values.assign(grid.s_grid.size(), std::vector<double>(T, 0.0));
  std::vector<std::vector<double>> v(static_cast<std::size_t>(m),
                                     std::vector<double>(T, 0.0));
  std::vector<double> vbar(T, 0.0);
  for (int k = 1; k <= K; ++k) {
    const std::vector<double> bk =
        bm_values_on(grid.strip_pairs[static_cast<std::size_t>(k - 1)], grid.t_grid);
    for (int j = 0; j < m; ++j) {
      RngStream aux = stream.child(
          {static_cast<std::uint64_t>(k), 2, static_cast<std::uint64_t>(j)});
      auto& vj = v[static_cast<std::size_t>(j)];
      vj[0] = 0.0;
      for (std::size_t i = 1; i < T; ++i) {
        const double dt = grid.t_grid[i] - grid.t_grid[i - 1];
        vj[i] = vj[i - 1] + std::sqrt(dt) * aux.next_normal();
      }
    }
    for (std::size_t i = 0; i < T; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += v[static_cast<std::size_t>(j)][i];
      vbar[i] = s / static_cast<double>(m);
    }
    for (int j = 1; j <= m; ++j) {
      const std::size_t row = static_cast<std::size_t>((k - 1) * m + j);
      const auto& prev = grid.w_values[row - 1];
      auto& cur = grid.w_values[row];
      const auto& vj = v[static_cast<std::size_t>(j - 1)];
      for (std::size_t i = 0; i < T; ++i) {
        const double sub = vj[i] - vbar[i] + inv_sqrt_m * bk[i];
        cur[i] = prev[i] + scale * inv_sqrt_m * sub;
      }
    }
  }
  if (frozen_tail) {
    grid.w_values.back() = grid.w_values[static_cast<std::size_t>(K * m)];
  }
  return grid;
}

std::size_t t_index(const SheetGrid& grid, double t) {
  const auto it = std::lower_bound(grid.t_grid.begin(), grid.t_grid.end(), t);
  if (it == grid.t_grid.end() || *it != t) {
    throw std::invalid_argument("sheet: t must be a grid point");
  }
  return static_cast<std::size_t>(it - grid.t_grid.begin());
}

}  // namespace

SheetGrid build_sheet_pair(const SheetConfig& config, const RngStream& stream) {
  return build_impl(config, stream, true);
}

SheetGrid build_sheet_pair_wn_only(const SheetConfig& config,
                                   const RngStream& stream) {
  return build_impl(config, stream, false);
}

double interp_Wn(const SheetGrid& grid, double s, double t) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("interp_Wn: s must lie in [0,1]");
  }
  const std::size_t ti = t_index(grid, t);
  const int K = grid.config.strip_count();
  const double x = s * grid.config.strip_count_real();
  int l = static_cast<int>(std::floor(x));
  if (l >= K) return grid.wn_strip[static_cast<std::size_t>(K)][ti];
  if (l < 0) l = 0;
  const double f = x - static_cast<double>(l);
  const double left = grid.wn_strip[static_cast<std::size_t>(l)][ti];
  const double right = grid.wn_strip[static_cast<std::size_t>(l + 1)][ti];
  return (1.0 - f) * left + f * right;
}

double sup_error(const SheetGrid& grid) {
  if (grid.w_values.empty()) {
    throw std::invalid_argument("sup_error: grid lacks true-sheet values");
  }
  const int K = grid.config.strip_count();
  const int m = grid.config.m;
  const std::size_t T = grid.t_grid.size();
  double best = 0.0;
  for (std::size_t row = 0; row < grid.s_grid.size(); ++row) {
    const bool tail = row > static_cast<std::size_t>(K * m);
    const int l = tail ? K : static_cast<int>(row) / m;
    const int i = tail ? 0 : static_cast<int>(row) % m;
    const double f = static_cast<double>(i) / static_cast<double>(m);
    const auto& wl = grid.wn_strip[static_cast<std::size_t>(std::min(l, K))];
    const auto& wr = grid.wn_strip[static_cast<std::size_t>(std::min(l + 1, K))];
    const auto& truth = grid.w_values[row];
    for (std::size_t ti = 0; ti < T; ++ti) {
      const double wn = (1.0 - f) * wl[ti] + f * wr[ti];
      best = std::max(best, std::abs(wn - truth[ti]));
    }
  }
  return best;
}

ErrorDecomposition error_decomposition(const SheetGrid& grid) {
  if (grid.w_values.empty()) {
    throw std::invalid_argument("error_decomposition: grid lacks true-sheet values");
  }
  const int K = grid.config.strip_count();
  const int m = grid.config.m;
  const std::size_t T = grid.t_grid.size();
  ErrorDecomposition out;
  for (std::size_t row = 0; row < grid.s_grid.size(); ++row) {
    const bool tail = row > static_cast<std::size_t>(K * m);
    const int l = tail ? K : static_cast<int>(row) / m;
    const int i = tail ? 0 : static_cast<int>(row) % m;
    const double f = static_cast<double>(i) / static_cast<double>(m);
    const std::size_t anchor_row = static_cast<std::size_t>(l * m);
    const auto& wl = grid.wn_strip[static_cast<std::size_t>(std::min(l, K))];
    const auto& wr = grid.wn_strip[static_cast<std::size_t>(std::min(l + 1, K))];
    const auto& w_anchor = grid.w_values[anchor_row];
    const auto& truth = grid.w_values[row];
    for (std::size_t ti = 0; ti < T; ++ti) {
      out.p1 = std::max(out.p1, f * std::abs(wr[ti] - wl[ti]));
      out.p3 = std::max(out.p3, std::abs(w_anchor[ti] - truth[ti]));
      if (i == 0) {
        out.p2 = std::max(out.p2, std::abs(wl[ti] - truth[ti]));
      }
    }
  }
  return out;
}

std::vector<PointPair> default_covariance_pairs() {
  // s coordinates sit close to strip-point multiples of 16384^{-0.19}
  // (~0.158268) so the piecewise-linear covariance bias stays far below the
  // Monte Carlo noise at the canonical diagnostic size; t coordinates are
  // dyadic rationals that land exactly on the default t grid.
  return {
      {{0.9496, 1.0}, {0.9496, 1.0}},
      {{0.4748, 1.0}, {0.9496, 1.0}},
      {{0.1583, 0.5}, {0.1583, 0.5}},
      {{0.3165, 0.25}, {0.6331, 0.75}},
      {{0.6331, 0.5}, {0.3165, 1.0}},
      {{0.7913, 0.75}, {0.7913, 0.25}},
      {{0.9496, 0.5}, {0.1583, 0.5}},
      {{0.4748, 0.75}, {0.4748, 1.0}},
      {{0.6331, 1.0}, {0.6331, 1.0}},
      {{0.3165, 0.3125}, {0.9496, 0.90625}},
  };
}

std::vector<CovarianceRow> covariance_check(const SheetConfig& config,
                                            int replicas,
                                            const std::vector<PointPair>& pairs,
                                            const RngStream& stream,
                                            int threads) {
  config.validate();
  if (replicas < 2) {
    throw std::invalid_argument("covariance_check: replicas must be >= 2");
  }
  if (pairs.empty()) {
    throw std::invalid_argument("covariance_check: no point pairs given");
  }
  const std::size_t P = pairs.size();
  std::vector<double> products(static_cast<std::size_t>(replicas) * P);
  parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
    const SheetGrid grid =
        build_sheet_pair_wn_only(config, stream.child({static_cast<std::uint64_t>(r)}));
    for (std::size_t p = 0; p < P; ++p) {
      const auto& [a, b] = pairs[p];
      const double v1 = interp_Wn(grid, a.first, a.second);
      const double v2 = interp_Wn(grid, b.first, b.second);
      products[r * P + p] = v1 * v2;
    }
  });
  std::vector<CovarianceRow> rows(P);
  std::vector<double> column(static_cast<std::size_t>(replicas));
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(replicas); ++r) {
      column[r] = products[r * P + p];
    }
    const MeanVar mv = mean_and_variance(column);
    auto& row = rows[p];
    const auto& [a, b] = pairs[p];
    row.s1 = a.first;
    row.t1 = a.second;
    row.s2 = b.first;
    row.t2 = b.second;
    row.empirical = mv.mean;
    row.exact = std::min(row.s1, row.s2) * std::min(row.t1, row.t2);
    row.stderr_ = std::sqrt(mv.variance / static_cast<double>(replicas));
  }
  return rows;
}

}  // namespace sheetwalk
