#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sheetwalk/rng.hpp"
#include "sheetwalk/transport.hpp"

using namespace sheetwalk;

namespace {

// Independent slow evaluator: walks the event list linearly and accumulates
// the signed spacings, never touching the precomputed cumulative table.
double slow_eval(const TelegraphPath& path, double t) {
  const double u = static_cast<double>(path.n) * t;
  double integral = 0.0;
  double prev = 0.0;
  double wave = 1.0;
  for (double e : path.events) {
    if (e >= u) break;
    integral += wave * (e - prev);
    prev = e;
    wave = -wave;
  }
  integral += wave * (u - prev);
  return static_cast<double>(path.sign) * integral /
         std::sqrt(static_cast<double>(path.n));
}

}  // namespace

TEST_CASE("telegraph construction is deterministic and well formed") {
  RngStream a = derive_stream(42, {1});
  RngStream b = derive_stream(42, {1});
  const TelegraphPath p = build_telegraph(1024, a);
  const TelegraphPath q = build_telegraph(1024, b);
  CHECK(p.sign == q.sign);
  REQUIRE(p.events == q.events);
  REQUIRE(p.cum_integral == q.cum_integral);

  REQUIRE((p.sign == 1 || p.sign == -1));
  REQUIRE(p.cum_integral.size() == p.events.size() + 1);
  CHECK(p.cum_integral[0] == 0.0);
  CHECK(p.events.front() > 0.0);
  CHECK(p.events.back() <= 1024.0);
  for (std::size_t i = 1; i < p.events.size(); ++i) {
    REQUIRE(p.events[i] > p.events[i - 1]);
  }
  // First leg has wave value +1, so I(e_1) = e_1 and I(e_2) = 2 e_1 - e_2.
  CHECK(p.cum_integral[1] == doctest::Approx(p.events[0]).epsilon(1e-15));
  CHECK(p.cum_integral[2] ==
        doctest::Approx(2.0 * p.events[0] - p.events[1]).epsilon(1e-12));

  CHECK_THROWS_AS((void)build_telegraph(0, a), std::invalid_argument);
}

TEST_CASE("eval_transport matches an independent linear-scan evaluator") {
  for (std::uint64_t n : {4ull, 64ull, 1024ull, 16384ull}) {
    RngStream s = derive_stream(7, {n});
    const TelegraphPath path = build_telegraph(n, s);
    RngStream ts = derive_stream(8, {n});
    for (int i = 0; i < 200; ++i) {
      const double t = ts.next_uniform();
      CHECK(eval_transport(path, t) ==
            doctest::Approx(slow_eval(path, t)).epsilon(1e-12));
    }
    CHECK(eval_transport(path, 0.0) == 0.0);
    CHECK(eval_transport(path, 1.0) ==
          doctest::Approx(slow_eval(path, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("eval_transport is exact at kink times") {
  RngStream s = derive_stream(9, {0});
  const TelegraphPath path = build_telegraph(512, s);
  const double inv = 1.0 / std::sqrt(512.0);
  for (std::size_t c = 0; c < path.events.size(); ++c) {
    const double t = path.events[c] / 512.0;
    if (t > 1.0) break;
    CHECK(eval_transport(path, t) ==
          doctest::Approx(path.sign * inv * path.cum_integral[c + 1])
              .epsilon(1e-14));
  }
}

TEST_CASE("path is piecewise linear with slopes exactly +-sqrt(n)") {
  const std::uint64_t n = 4096;
  RngStream s = derive_stream(10, {0});
  const TelegraphPath path = build_telegraph(n, s);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  RngStream ts = derive_stream(10, {1});
  int checked = 0;
  for (int i = 0; i < 500 && checked < 100; ++i) {
    const double t1 = ts.next_uniform();
    const double t2 = t1 + 1e-7;
    if (t2 > 1.0) continue;
    // Only segments with no kink strictly between the probes count.
    const auto lo = std::lower_bound(path.events.begin(), path.events.end(),
                                     n * t1);
    if (lo != path.events.end() && *lo < n * t2) continue;
    const double slope =
        (eval_transport(path, t2) - eval_transport(path, t1)) / (t2 - t1);
    CHECK(std::abs(std::abs(slope) - sqrt_n) < 1e-9 * sqrt_n);
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("grid evaluation agrees with pointwise evaluation") {
  RngStream s = derive_stream(11, {0});
  const TelegraphPath path = build_telegraph(2048, s);
  RngStream ts = derive_stream(11, {1});
  std::vector<double> grid = {0.0, 1.0};
  for (int i = 0; i < 300; ++i) grid.push_back(ts.next_uniform());
  std::sort(grid.begin(), grid.end());
  const std::vector<double> batch = eval_transport_grid(path, grid);
  REQUIRE(batch.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(batch[i] == eval_transport(path, grid[i]));
  }
}

TEST_CASE("hand-built paths evaluate to closed forms") {
  // No events: the wave stays at +1, so value(t) = t on n = 1.
  const TelegraphPath flat{1, 1, {}, {0.0}};
  CHECK(eval_transport(flat, 0.7) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(sup_abs_transport(flat) == doctest::Approx(1.0).epsilon(1e-15));

  // One flip halfway: rises to 0.5 then returns to 0 at t = 1.
  const TelegraphPath tent{1, 1, {0.5}, {0.0, 0.5}};
  CHECK(eval_transport(tent, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_transport(tent, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_transport(tent, 0.75) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sup_abs_transport(tent) == doctest::Approx(0.5).epsilon(1e-15));

  // Negative sign mirrors the path.
  const TelegraphPath mirr{1, -1, {0.5}, {0.0, 0.5}};
  CHECK(eval_transport(mirr, 0.5) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("eval_transport rejects arguments outside [0,1]") {
  const TelegraphPath flat{1, 1, {}, {0.0}};
  CHECK_THROWS_AS((void)eval_transport(flat, -0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)eval_transport(flat, 1.1), std::invalid_argument);
}

TEST_CASE("sup_abs_transport dominates any grid maximum and is attained") {
  for (std::uint64_t n : {16ull, 256ull, 4096ull}) {
    RngStream s = derive_stream(13, {n});
    const TelegraphPath path = build_telegraph(n, s);
    const double sup = sup_abs_transport(path);
    double grid_max = 0.0;
    const int kGrid = 20001;
    for (int i = 0; i < kGrid; ++i) {
      grid_max = std::max(
          grid_max, std::abs(eval_transport(path, i / (kGrid - 1.0))));
    }
    CHECK(sup >= grid_max - 1e-14);
    // Kinks and endpoints are the only extrema candidates; adding them to the
    // grid must reproduce the sup exactly.
    double kink_max = std::max(std::abs(eval_transport(path, 0.0)),
                               std::abs(eval_transport(path, 1.0)));
    for (double e : path.events) {
      const double t = e / static_cast<double>(n);
      if (t > 1.0) break;
      kink_max = std::max(kink_max, std::abs(eval_transport(path, t)));
    }
    CHECK(sup == doctest::Approx(kink_max).epsilon(1e-14));
  }
}

TEST_CASE("terminal value has unit variance in the large-n limit") {
  const std::uint64_t n = 10000;
  const int kReps = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < kReps; ++r) {
    RngStream s = derive_stream(77, {static_cast<std::uint64_t>(r)});
    const TelegraphPath path = build_telegraph(n, s);
    const double v = eval_transport(path, 1.0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / kReps;
  const double var = sum2 / kReps - mean * mean;
  // Var = 1 - (1 - e^{-2n})/(2n) = 1 - 5e-5 at this n; chi-square stderr.
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(kReps)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / kReps));
}
