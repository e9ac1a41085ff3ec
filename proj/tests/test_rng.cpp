#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sheetwalk/rng.hpp"

using namespace sheetwalk;

TEST_CASE("streams are deterministic given (seed, path)") {
  RngStream a = derive_stream(42, {7, 3});
  RngStream b = derive_stream(42, {7, 3});
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct paths and distinct seeds give distinct sequences") {
  RngStream a = derive_stream(42, {7, 3});
  RngStream b = derive_stream(42, {7, 4});
  RngStream c = derive_stream(43, {7, 3});
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    if (x == b.next_u64()) ++equal_ab;
    if (x == c.next_u64()) ++equal_ac;
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("child() is pure and extends the path") {
  RngStream parent = derive_stream(1, {5});
  RngStream before = derive_stream(1, {5});
  RngStream kid = parent.child({9});
  // Deriving a child must not advance the parent.
  CHECK(parent.next_u64() == before.next_u64());
  REQUIRE(kid.path().size() == 2);
  CHECK(kid.path()[0] == 5);
  CHECK(kid.path()[1] == 9);
  RngStream direct = derive_stream(1, {5, 9});
  for (int i = 0; i < 16; ++i) CHECK(kid.next_u64() == direct.next_u64());
}

TEST_CASE("uniforms lie strictly inside (0,1) with mean near 1/2") {
  RngStream s = derive_stream(2024, {1});
  const int kCount = 100000;
  double sum = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const double u = s.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // stderr of the mean is (12*kCount)^{-1/2} ~ 9.1e-4; allow 5 sigma.
  CHECK(std::abs(sum / kCount - 0.5) < 5.0 * 9.2e-4);
}

TEST_CASE("sibling streams are uncorrelated in aggregate") {
  RngStream a = derive_stream(7, {11, 0});
  RngStream b = derive_stream(7, {11, 1});
  const int kCount = 100000;
  double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const double x = a.next_uniform(), y = b.next_uniform();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double n = kCount;
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  const double rho = cov / std::sqrt(vx * vy);
  CHECK(std::abs(rho) < 0.02);
}

TEST_CASE("normal quantile matches published reference values") {
  // Reference values of the standard normal inverse CDF, 16 digits.
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(0.9) ==
        doctest::Approx(1.2815515655446004).epsilon(1e-14));
  CHECK(normal_quantile(0.001) ==
        doctest::Approx(-3.090232306167813).epsilon(1e-14));
  CHECK(normal_quantile(1e-9) ==
        doctest::Approx(-5.9978070150076865).epsilon(1e-13));
  CHECK(normal_quantile(0.3) ==
        doctest::Approx(-0.5244005127080409).epsilon(1e-14));
  // Symmetry.
  CHECK(normal_quantile(0.975) == doctest::Approx(-normal_quantile(0.025)));
  CHECK_THROWS_AS((void)normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("normal cdf matches reference values and inverts the quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
  CHECK(normal_cdf(-2.5) ==
        doctest::Approx(0.006209665325776132).epsilon(1e-13));
  for (double p : {0.01, 0.2, 0.5, 0.777, 0.99}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("normal samples have the right first two moments") {
  RngStream s = derive_stream(3, {2});
  const int kCount = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const double z = s.next_normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / kCount;
  const double var = sum2 / kCount - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(kCount)));
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / kCount));
}

TEST_CASE("exponential samples are positive with unit mean") {
  RngStream s = derive_stream(3, {4});
  const int kCount = 100000;
  double sum = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const double e = s.next_exponential();
    REQUIRE(e > 0.0);
    sum += e;
  }
  CHECK(std::abs(sum / kCount - 1.0) < 5.0 / std::sqrt(static_cast<double>(kCount)));
}

TEST_CASE("signs are +/-1 and balanced") {
  RngStream s = derive_stream(3, {6});
  const int kCount = 100000;
  long long sum = 0;
  for (int i = 0; i < kCount; ++i) {
    const int v = s.next_sign();
    REQUIRE((v == 1 || v == -1));
    sum += v;
  }
  CHECK(std::abs(static_cast<double>(sum)) <
        5.0 * std::sqrt(static_cast<double>(kCount)));
}

TEST_CASE("poisson events are strictly increasing inside (0, horizon]") {
  RngStream s = derive_stream(11, {1});
  const double horizon = 1000.0;
  const std::vector<double> events = sample_poisson_events(s, horizon);
  REQUIRE(!events.empty());
  CHECK(events.front() > 0.0);
  CHECK(events.back() <= horizon);
  for (std::size_t i = 1; i < events.size(); ++i) {
    REQUIRE(events[i] > events[i - 1]);
  }
  // Unit rate: count ~ Poisson(horizon), so within 5 sqrt(horizon).
  CHECK(std::abs(static_cast<double>(events.size()) - horizon) <
        5.0 * std::sqrt(horizon));
}

TEST_CASE("poisson event counts average to the horizon across replicas") {
  const double horizon = 64.0;
  double total = 0.0;
  const int kReps = 2000;
  for (int r = 0; r < kReps; ++r) {
    RngStream s = derive_stream(12, {static_cast<std::uint64_t>(r)});
    total += static_cast<double>(sample_poisson_events(s, horizon).size());
  }
  const double mean = total / kReps;
  CHECK(std::abs(mean - horizon) < 5.0 * std::sqrt(horizon / kReps));
}

TEST_CASE("poisson sampler rejects a non-positive horizon") {
  RngStream s = derive_stream(1, {1});
  CHECK_THROWS_AS((void)sample_poisson_events(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_poisson_events(s, -1.0), std::invalid_argument);
}
