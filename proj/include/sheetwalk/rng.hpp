#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace sheetwalk {

// Splittable counter-based random stream. A stream is identified by
// (master_seed, path); equal identities produce identical sample sequences,
// and distinct paths produce statistically independent streams. Replica- and
// strip-level work can therefore run on any schedule without changing results.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::vector<std::uint64_t> path);

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  // Stream for path + suffix. Pure: does not advance this stream.
  RngStream child(std::initializer_list<std::uint64_t> suffix) const;

  std::uint64_t next_u64();
  double next_uniform();      // strictly inside (0,1)
  double next_exponential();  // Exp(1), inverse CDF
  double next_normal();       // N(0,1), inverse CDF
  int next_sign();            // +1 or -1 with equal probability

 private:
  std::uint64_t master_seed_ = 0;
  std::vector<std::uint64_t> path_;
  std::uint64_t state_ = 0;
};

RngStream derive_stream(std::uint64_t master_seed,
                        const std::vector<std::uint64_t>& path);

// Event times of a unit-rate Poisson process on (0, horizon], strictly
// increasing, built from cumulative Exp(1) spacings with compensated
// summation. Throws std::invalid_argument unless horizon > 0.
std::vector<double> sample_poisson_events(RngStream& stream, double horizon);

int sample_sign(RngStream& stream);

// Inverse standard normal CDF (Wichura's PPND16 rational approximation,
// absolute error below 1e-15). Throws unless 0 < p < 1.
double normal_quantile(double p);

double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace sheetwalk
