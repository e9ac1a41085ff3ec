#include "sheetwalk/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sheetwalk {
namespace {

// Value of the path at scaled time u = n*t, given c = #events <= u.
inline double value_at_u(const TelegraphPath& path, double u, std::size_t c,
                         double inv_sqrt_n) {
  const double e_c = (c == 0) ? 0.0 : path.events[c - 1];
  const double wave = (c % 2 == 0) ? 1.0 : -1.0;
  return static_cast<double>(path.sign) * inv_sqrt_n *
         (path.cum_integral[c] + wave * (u - e_c));
}

}  // namespace

TelegraphPath build_telegraph(std::uint64_t n, RngStream& stream) {
  if (n == 0) throw std::invalid_argument("build_telegraph: n must be >= 1");
  TelegraphPath path;
  path.n = n;
  path.sign = stream.next_sign();
  path.events = sample_poisson_events(stream, static_cast<double>(n));
  path.cum_integral.resize(path.events.size() + 1);
  path.cum_integral[0] = 0.0;
  // Neumaier-compensated alternating sum of spacings.
  double sum = 0.0, comp = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < path.events.size(); ++i) {
    const double spacing = path.events[i] - prev;
    const double term = (i % 2 == 0) ? spacing : -spacing;
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    path.cum_integral[i + 1] = sum + comp;
    prev = path.events[i];
  }
  return path;
}

double eval_transport(const TelegraphPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("eval_transport: t must lie in [0,1]");
  }
  const double u = t * static_cast<double>(path.n);
  const std::size_t c = static_cast<std::size_t>(
      std::upper_bound(path.events.begin(), path.events.end(), u) -
      path.events.begin());
  return value_at_u(path, u, c, 1.0 / std::sqrt(static_cast<double>(path.n)));
}

std::vector<double> eval_transport_grid(const TelegraphPath& path,
                                        const std::vector<double>& t_grid) {
  std::vector<double> out(t_grid.size());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(path.n));
  std::size_t c = 0;
  double prev_t = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!(t >= 0.0 && t <= 1.0) || t < prev_t) {
      throw std::invalid_argument(
          "eval_transport_grid: grid must be ascending within [0,1]");
    }
    prev_t = t;
    const double u = t * static_cast<double>(path.n);
    while (c < path.events.size() && path.events[c] <= u) ++c;
    out[i] = value_at_u(path, u, c, inv_sqrt_n);
  }
  return out;
}

double sup_abs_transport(const TelegraphPath& path) {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(path.n));
  double best = 0.0;
  for (std::size_t c = 1; c <= path.events.size(); ++c) {
    best = std::max(best, std::abs(path.cum_integral[c]));
  }
  // Right endpoint t = 1 (u = n).
  const std::size_t c = path.events.size();
  best = std::max(best, std::abs(value_at_u(path, static_cast<double>(path.n),
                                            c, 1.0)));
  return best * inv_sqrt_n;
}

}  // namespace sheetwalk
