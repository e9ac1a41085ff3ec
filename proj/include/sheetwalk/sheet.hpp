#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sheetwalk/coupling.hpp"
#include "sheetwalk/rng.hpp"
#include "sheetwalk/transport.hpp"

namespace sheetwalk {

// Parameters of one coupled-sheet build. The s axis is partitioned into
// K = floor(n^lambda) strips of width n^-lambda; each strip carries one
// telegraph/Brownian pair, and each strip Brownian motion is refined into m
// sub-strip Brownian motions for true-sheet evaluation between strip points.
struct SheetConfig {
  std::uint64_t n = 1024;
  double lambda = 0.19;
  int m = 8;
  int t_grid_size = 1024;

  double strip_count_real() const;  // n^lambda
  int strip_count() const;          // K = floor(n^lambda)
  double strip_width() const;       // n^-lambda
  void validate() const;            // throws std::invalid_argument
};

// Coupled approximation/target values on the refined (s, t) grid.
//
//   s_grid:   j * strip_width / m for j = 0..K*m, plus 1.0 when K*m covers
//             less than [0,1]; both surfaces are constant ("frozen") in s
//             beyond the last strip point.
//   wn_strip: (K+1) x T approximating surface at strip points l = 0..K,
//             wn_strip[l][i] = sum_{k<=l} n^{-lambda/2} * telegraph_k(t_i).
//   w_values: |s_grid| x T true sheet on the refined s grid, assembled from
//             the sub-strip decomposition so that the strip-level increments
//             reproduce n^{-lambda/2} * (strip Brownian motion) exactly.
struct SheetGrid {
  SheetConfig config;
  std::vector<double> s_grid;
  std::vector<double> t_grid;
  std::vector<std::vector<double>> wn_strip;
  std::vector<std::vector<double>> w_values;
  std::vector<CoupledBmPair> strip_pairs;
};

// Builds K coupled strip pairs plus the sub-strip refinement from substreams
// of `stream` ({k,0} telegraph, {k,1} bridges, {k,2,j} sub-strip auxiliaries).
SheetGrid build_sheet_pair(const SheetConfig& config, const RngStream& stream);

// As above but skips the true-sheet refinement (w_values empty); used by
// diagnostics that only look at the approximating surface.
SheetGrid build_sheet_pair_wn_only(const SheetConfig& config,
                                   const RngStream& stream);

// Approximating surface at arbitrary s in [0,1] and a t that must be a grid
// point: linear interpolation between neighbouring strip points, constant
// beyond the last one. Throws if s is outside [0,1] or t is off-grid.
double interp_Wn(const SheetGrid& grid, double s, double t);

// max over the refined grid of |W_n - W|.
double sup_error(const SheetGrid& grid);

struct ErrorDecomposition {
  double p1 = 0.0;  // interpolation error of W_n within strips
  double p2 = 0.0;  // coupling error at strip points
  double p3 = 0.0;  // true-sheet modulus between strip points
};
// Triangle decomposition with the left strip point as the common anchor;
// sup_error(grid) <= p1 + p2 + p3 pointwise by construction.
ErrorDecomposition error_decomposition(const SheetGrid& grid);

struct CovarianceRow {
  double s1 = 0.0, t1 = 0.0, s2 = 0.0, t2 = 0.0;
  double empirical = 0.0;
  double exact = 0.0;   // min(s1,s2) * min(t1,t2)
  double stderr_ = 0.0;
};
using PointPair = std::pair<std::pair<double, double>, std::pair<double, double>>;

// Empirical E[W_n(s1,t1) W_n(s2,t2)] over replicas against the product
// covariance. All t coordinates must lie on the configured t grid.
std::vector<CovarianceRow> covariance_check(const SheetConfig& config,
                                            int replicas,
                                            const std::vector<PointPair>& pairs,
                                            const RngStream& stream,
                                            int threads = 0);

// The ten point pairs used by default in the covariance diagnostic.
std::vector<PointPair> default_covariance_pairs();

}  // namespace sheetwalk
