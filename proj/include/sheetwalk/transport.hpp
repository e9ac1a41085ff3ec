#pragma once

#include <cstdint>
#include <vector>

#include "sheetwalk/rng.hpp"

namespace sheetwalk {

// One realized telegraph trajectory: a fair sign and the event times of a
// unit-rate Poisson process on (0, n]. The associated path on t in [0,1] is
//   value(t) = sign * n^{-1/2} * I(n*t),
// where I(u) integrates the +/-1 square wave that starts at +1 and flips at
// every event time. value is continuous and piecewise linear with slopes
// exactly +/- sqrt(n) and kinks at event_i / n; value(0) = 0.
struct TelegraphPath {
  std::uint64_t n = 1;
  int sign = 1;
  std::vector<double> events;        // ascending, in (0, n]
  // cum_integral[c] = I(e_c) with e_0 = 0, computed once with compensated
  // summation of the alternating spacings; size = events.size() + 1.
  std::vector<double> cum_integral;
};

// Draws the sign, then the events, from the given stream. Throws if n == 0.
TelegraphPath build_telegraph(std::uint64_t n, RngStream& stream);

// Exact path value at t (binary search + local linear formula).
// Throws unless 0 <= t <= 1.
double eval_transport(const TelegraphPath& path, double t);

// Batch evaluation by a single merged sweep, O(|grid| + |events|).
// Grid must be ascending within [0,1].
std::vector<double> eval_transport_grid(const TelegraphPath& path,
                                        const std::vector<double>& t_grid);

// max over [0,1] of |value(t)|, exact: the maximum of a piecewise-linear
// path is attained at a kink or an endpoint.
double sup_abs_transport(const TelegraphPath& path);

}  // namespace sheetwalk
