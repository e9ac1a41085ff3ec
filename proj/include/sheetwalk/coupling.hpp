#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sheetwalk/rng.hpp"
#include "sheetwalk/transport.hpp"

namespace sheetwalk {

// A telegraph path and a Brownian motion realized on shared randomness so
// that their sup-distance is a well-defined, measurable random variable.
//
// Construction: the Brownian leg is pinned exactly to the telegraph walk at
// the even-indexed event times ("skeleton", spacing ~ 2/n) and filled between
// consecutive pins with exact conditional Brownian bridges drawn from an
// independent substream; after the last pin it continues as a free Brownian
// motion. Grid increments that aggregate many skeleton spans are Gaussian to
// measurement accuracy, and the sup-distance between the two legs decays
// polynomially in n.
struct CoupledBmPair {
  TelegraphPath path;
  std::vector<double> t_grid;            // union of requested grid and kink times
  std::vector<double> transport_values;  // telegraph leg on t_grid
  std::vector<double> bm_values;         // Brownian leg on t_grid
  std::vector<double> skeleton_times;    // even-indexed event times / n
};

// Builds the coupled pair on union(t_grid, kink times). The requested grid
// must be ascending within [0,1] and contain both 0 and 1 (throws otherwise).
CoupledBmPair couple_bm(const TelegraphPath& path, RngStream& stream,
                        const std::vector<double>& t_grid);

// max over the pair's grid (kinks already merged in) of |transport - bm|.
double sup_distance(const CoupledBmPair& pair);

// Same max restricted to a subset of grid indices (diagnostics/tests).
double sup_distance_on(const CoupledBmPair& pair,
                       const std::vector<std::size_t>& indices);

// Brownian-leg values at the points of `grid`, each of which must be present
// in pair.t_grid exactly (throws otherwise).
std::vector<double> bm_values_on(const CoupledBmPair& pair,
                                 const std::vector<double>& grid);

struct BmRateRow {
  std::uint64_t n = 0;
  int replicas = 0;
  double median = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
};

// For each n: median/0.9/0.99 quantiles of sup_distance over independent
// replicas on a uniform grid of grid_size points. Deterministic given
// master_seed regardless of thread count. Throws on an empty n_list.
std::vector<BmRateRow> bm_rate_experiment(const std::vector<std::uint64_t>& n_list,
                                          int replicas,
                                          std::uint64_t master_seed,
                                          int grid_size, int threads = 0);

// Uniform grid of `points` values spanning [0,1] inclusive (points >= 2).
std::vector<double> uniform_grid(int points);

// Per-replica sup distances behind bm_rate_experiment, exposed for tests
// and bootstrap diagnostics; replica r uses streams derived from
// (master_seed, {1, n_index, r, *}).
std::vector<double> bm_sup_samples(std::uint64_t n, std::size_t n_index,
                                   int replicas, std::uint64_t master_seed,
                                   int grid_size, int threads = 0);

}  // namespace sheetwalk
