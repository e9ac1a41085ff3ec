#include "sheetwalk/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sheetwalk/parallel.hpp"
#include "sheetwalk/stats.hpp"

namespace sheetwalk {

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need >= 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double den = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / den;
  }
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

CoupledBmPair couple_bm(const TelegraphPath& path, RngStream& stream,
                        const std::vector<double>& t_grid) {
  if (t_grid.size() < 2 || t_grid.front() != 0.0 || t_grid.back() != 1.0) {
    throw std::invalid_argument("couple_bm: t_grid must contain 0 and 1");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= t_grid[i - 1])) {
      throw std::invalid_argument("couple_bm: t_grid must be ascending");
    }
  }

  CoupledBmPair pair;
  pair.path = path;

  const double n = static_cast<double>(path.n);
  const double inv_sqrt_n = 1.0 / std::sqrt(n);

  // Kink times on the t scale, capped at 1.
  std::vector<double> kinks;
  kinks.reserve(path.events.size());
  for (double e : path.events) {
    const double t = e / n;
    if (t <= 1.0) kinks.push_back(t);
  }

  pair.t_grid.reserve(t_grid.size() + kinks.size());
  std::merge(t_grid.begin(), t_grid.end(), kinks.begin(), kinks.end(),
             std::back_inserter(pair.t_grid));
  pair.t_grid.erase(std::unique(pair.t_grid.begin(), pair.t_grid.end()),
                    pair.t_grid.end());

  // Skeleton: even-indexed events (1-based), i.e. events[1], events[3], ...
  // The walk value there is an exact kink value of the telegraph path.
  const std::size_t n_pins = path.events.size() / 2;
  std::vector<double> pin_values(n_pins);
  pair.skeleton_times.resize(n_pins);
  for (std::size_t j = 0; j < n_pins; ++j) {
    pair.skeleton_times[j] = path.events[2 * j + 1] / n;
    pin_values[j] = static_cast<double>(path.sign) * inv_sqrt_n *
                    path.cum_integral[2 * j + 2];
  }

  // Brownian leg: exact sequential bridges between consecutive pins, free
  // increments after the last pin. Grid points equal to a pin take the pin
  // value exactly (skeleton times are kink times, hence grid members).
  pair.bm_values.resize(pair.t_grid.size());
  std::size_t pin = 0;  // next pin index
  double prev_t = 0.0, prev_b = 0.0;
  for (std::size_t i = 0; i < pair.t_grid.size(); ++i) {
    const double t = pair.t_grid[i];
    if (t == 0.0) {
      pair.bm_values[i] = 0.0;
      continue;
    }
    while (pin < n_pins && pair.skeleton_times[pin] < t) ++pin;  // defensive
    double b;
    if (pin < n_pins && t == pair.skeleton_times[pin]) {
      b = pin_values[pin];
      ++pin;
    } else if (pin < n_pins) {
      const double tt = pair.skeleton_times[pin];
      const double bb = pin_values[pin];
      const double span = tt - prev_t;
      const double dt = t - prev_t;
      const double mean = prev_b + dt / span * (bb - prev_b);
      const double var = dt * (tt - t) / span;
      b = mean + std::sqrt(std::max(var, 0.0)) * stream.next_normal();
    } else {
      b = prev_b + std::sqrt(t - prev_t) * stream.next_normal();
    }
    pair.bm_values[i] = b;
    prev_t = t;
    prev_b = b;
  }

  pair.transport_values = eval_transport_grid(path, pair.t_grid);
  return pair;
}

double sup_distance(const CoupledBmPair& pair) {
  double best = 0.0;
  for (std::size_t i = 0; i < pair.t_grid.size(); ++i) {
    best = std::max(best, std::abs(pair.transport_values[i] - pair.bm_values[i]));
  }
  return best;
}

double sup_distance_on(const CoupledBmPair& pair,
                       const std::vector<std::size_t>& indices) {
  double best = 0.0;
  for (std::size_t i : indices) {
    if (i >= pair.t_grid.size()) {
      throw std::invalid_argument("sup_distance_on: index out of range");
    }
    best = std::max(best, std::abs(pair.transport_values[i] - pair.bm_values[i]));
  }
  return best;
}

std::vector<double> bm_values_on(const CoupledBmPair& pair,
                                 const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto it = std::lower_bound(pair.t_grid.begin(), pair.t_grid.end(), grid[i]);
    if (it == pair.t_grid.end() || *it != grid[i]) {
      throw std::invalid_argument("bm_values_on: point not on the pair's grid");
    }
    out[i] = pair.bm_values[static_cast<std::size_t>(it - pair.t_grid.begin())];
  }
  return out;
}

std::vector<double> bm_sup_samples(std::uint64_t n, std::size_t n_index,
                                   int replicas, std::uint64_t master_seed,
                                   int grid_size, int threads) {
  if (replicas < 1) throw std::invalid_argument("bm_sup_samples: replicas must be >= 1");
  const std::vector<double> grid = uniform_grid(grid_size);
  std::vector<double> sups(static_cast<std::size_t>(replicas));
  parallel_for(sups.size(), threads, [&](std::size_t r) {
    RngStream path_stream =
        derive_stream(master_seed, {1, static_cast<std::uint64_t>(n_index),
                                    static_cast<std::uint64_t>(r), 0});
    RngStream bridge_stream =
        derive_stream(master_seed, {1, static_cast<std::uint64_t>(n_index),
                                    static_cast<std::uint64_t>(r), 1});
    const TelegraphPath path = build_telegraph(n, path_stream);
    const CoupledBmPair pair = couple_bm(path, bridge_stream, grid);
    sups[r] = sup_distance(pair);
  });
  return sups;
}

std::vector<BmRateRow> bm_rate_experiment(const std::vector<std::uint64_t>& n_list,
                                          int replicas,
                                          std::uint64_t master_seed,
                                          int grid_size, int threads) {
  if (n_list.empty()) throw std::invalid_argument("bm_rate_experiment: empty n_list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("bm_rate_experiment: n_list must be strictly ascending");
    }
  }
  std::vector<BmRateRow> rows(n_list.size());
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    std::vector<double> sups =
        bm_sup_samples(n_list[k], k, replicas, master_seed, grid_size, threads);
    rows[k].n = n_list[k];
    rows[k].replicas = replicas;
    rows[k].median = quantile(sups, 0.5);
    rows[k].q90 = quantile(sups, 0.9);
    rows[k].q99 = quantile(sups, 0.99);
  }
  return rows;
}

}  // namespace sheetwalk
