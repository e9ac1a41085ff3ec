#include "sheetwalk/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sheetwalk {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 output mixer (Stafford/Steele finalizer).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Keyed hash of (master_seed, path) -> stream counter. Every path word is
// mixed with its position so [1,0] and [0,1] land far apart.
std::uint64_t derive_key(std::uint64_t master_seed,
                         const std::vector<std::uint64_t>& path) {
  std::uint64_t key = mix64(master_seed ^ 0x8E1FDE1F11E1DE53ULL);
  std::uint64_t pos = 1;
  for (std::uint64_t word : path) {
    key = mix64(key + kGamma * pos + mix64(word + kGamma));
    ++pos;
  }
  return key;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::vector<std::uint64_t> path)
    : master_seed_(master_seed),
      path_(std::move(path)),
      state_(derive_key(master_seed_, path_)) {}

RngStream RngStream::child(std::initializer_list<std::uint64_t> suffix) const {
  std::vector<std::uint64_t> p = path_;
  p.insert(p.end(), suffix.begin(), suffix.end());
  return RngStream(master_seed_, std::move(p));
}

std::uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RngStream::next_uniform() {
  // Center of one of 2^53 equal cells: strictly inside (0,1), symmetric.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_exponential() { return -std::log(next_uniform()); }

double RngStream::next_normal() { return normal_quantile(next_uniform()); }

int RngStream::next_sign() { return (next_u64() >> 63) ? 1 : -1; }

RngStream derive_stream(std::uint64_t master_seed,
                        const std::vector<std::uint64_t>& path) {
  return RngStream(master_seed, path);
}

std::vector<double> sample_poisson_events(RngStream& stream, double horizon) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("sample_poisson_events: horizon must be positive");
  }
  std::vector<double> events;
  events.reserve(static_cast<std::size_t>(horizon + 4.0 * std::sqrt(horizon) + 16.0));
  // Neumaier-compensated running sum of spacings.
  double sum = 0.0, comp = 0.0;
  double prev = 0.0;
  for (;;) {
    const double spacing = stream.next_exponential();
    const double t = sum + spacing;
    comp += (std::abs(sum) >= spacing) ? (sum - t) + spacing : (spacing - t) + sum;
    sum = t;
    double event = sum + comp;
    if (event > horizon) break;
    if (event <= prev) {  // enforce strict increase against rounding collapse
      event = std::nextafter(prev, std::numeric_limits<double>::infinity());
      if (event > horizon) break;
    }
    events.push_back(event);
    prev = event;
  }
  return events;
}

int sample_sign(RngStream& stream) { return stream.next_sign(); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie strictly in (0,1)");
  }
  // Wichura's algorithm AS 241, PPND16.
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
    const double den =
        ((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
             3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
           5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
         4.2313330701600911252e+1) * r + 1.0;
    return num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
             2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
           3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
         4.63033784615654529590e+0) * r + 1.42343711074968357734e+0;
    const double den =
        ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
             1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
           6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
         2.05319162663775882187e+0) * r + 1.0;
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
             1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
           2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
         5.46378491116411436990e+0) * r + 6.65790464350110377720e+0;
    const double den =
        ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
             1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
           1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
         5.99832206555887937690e-1) * r + 1.0;
    val = num / den;
  }
  return (q < 0.0) ? -val : val;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double normal_pdf(double x) {
  return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

}  // namespace sheetwalk
