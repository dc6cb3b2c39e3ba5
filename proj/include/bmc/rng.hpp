#ifndef BMC_RNG_HPP
#define BMC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011).
//
// Every stream is keyed by (seed, purpose, path, time, sub), so any draw can
// be regenerated in isolation: workers never share generator state, results
// do not depend on how paths are partitioned across threads, and
// subsimulation draws are independent of the draws that advance their parent
// path because they live under a different purpose tag.

namespace bmc {

/// Disjoint stream families. Each pipeline stage draws from its own family.
enum class Purpose : std::uint32_t {
  Build = 1,      // coercion training paths
  Primal = 2,     // lower-bound evaluation paths
  DualPath = 3,   // upper-bound outer paths
  DualSub = 4,    // upper-bound subsimulations
  European = 5,   // European reference paths
  ChainPath = 6,  // coerced-chain self-simulation
  ChainSub = 7,   // coerced-chain subsimulations
  AltDualSub = 8, // alternative subsim tag (independence checks)
  Scratch = 9,    // test-only draws
};

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t n0 = hi1 ^ ctr[1] ^ key[0];
  const std::uint32_t n2 = hi0 ^ ctr[3] ^ key[1];
  ctr[0] = n0;
  ctr[1] = lo1;
  ctr[2] = n2;
  ctr[3] = lo0;
}

/// One 10-round Philox4x32 block: 128 bits of counter -> 128 random bits.
inline void philox4x32_10(const std::uint32_t ctr_in[4], const std::uint32_t key_in[2],
                          std::uint32_t out[4]) {
  std::uint32_t key[2] = {key_in[0], key_in[1]};
  out[0] = ctr_in[0];
  out[1] = ctr_in[1];
  out[2] = ctr_in[2];
  out[3] = ctr_in[3];
  philox_round(out, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
    philox_round(out, key);
  }
}

} // namespace detail

/// Inverse of the standard normal CDF (Wichura's AS 241, double precision).
/// Accurate to about 1e-15 over p in (0, 1).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p outside (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
              6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
            1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
          1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
    const double den =
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
            5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
          4.2313330701600911252e+1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    val = num / den;
  }
  return (q < 0.0) ? -val : val;
}

/// One independent stream of uniforms/normals, addressed by
/// (seed, purpose, path, time, sub). Cheap to construct; no shared state.
class Substream {
 public:
  Substream(std::uint64_t seed, Purpose purpose, std::uint64_t path,
            std::uint32_t time, std::uint32_t sub) {
    if (path > 0xFFFFFFFFull) throw std::invalid_argument("Substream: path index exceeds 2^32");
    if (time >= (1u << 20)) throw std::invalid_argument("Substream: time index exceeds 2^20");
    if (sub >= (1u << 12)) throw std::invalid_argument("Substream: sub index exceeds 2^12");
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    id_[0] = static_cast<std::uint32_t>(purpose);
    id_[1] = static_cast<std::uint32_t>(path);
    id_[2] = (time << 12) | sub;
  }

  std::uint64_t next_u64() {
    if (word_ >= 4) refill();
    const std::uint64_t lo = buf_[word_];
    const std::uint64_t hi = buf_[word_ + 1];
    word_ += 2;
    return (hi << 32) | lo;
  }

  /// Uniform on the open interval (0,1); never returns an endpoint.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  /// Standard normal via the inverse CDF (one u64 per variate; monotone map).
  double normal() { return inverse_normal_cdf(uniform()); }

 private:
  void refill() {
    const std::uint32_t ctr[4] = {block_, id_[0], id_[1], id_[2]};
    detail::philox4x32_10(ctr, key_, buf_);
    ++block_;
    word_ = 0;
  }

  std::uint32_t key_[2];
  std::uint32_t id_[3];
  std::uint32_t block_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int word_ = 4;
};

/// A (seed, purpose) family of substreams.
class RngStream {
 public:
  RngStream(std::uint64_t seed, Purpose purpose) : seed_(seed), purpose_(purpose) {}

  Substream at(std::uint64_t path, std::uint32_t time, std::uint32_t sub = 0) const {
    return Substream(seed_, purpose_, path, time, sub);
  }

  std::uint64_t seed() const { return seed_; }
  Purpose purpose() const { return purpose_; }

 private:
  std::uint64_t seed_;
  Purpose purpose_;
};

} // namespace bmc

#endif // BMC_RNG_HPP
