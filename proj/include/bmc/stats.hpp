#ifndef BMC_STATS_HPP
#define BMC_STATS_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace bmc {

/// Monte Carlo sample mean with its standard error.
struct BoundEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

/// Pairwise (cascade) summation. Deterministic for a fixed element order and
/// accurate to O(log n) rounding, so estimates do not depend on thread count
/// as long as per-path values land in fixed slots.
inline double pairwise_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline BoundEstimate estimate_from_samples(std::span<const double> x) {
  BoundEstimate e;
  e.n = x.size();
  if (e.n == 0) return e;
  e.mean = pairwise_sum(x) / static_cast<double>(e.n);
  if (e.n == 1) return e;
  // Two-pass variance: numerically safe and order-deterministic.
  double ss = 0.0;
  {
    // pairwise over squared deviations without materializing them
    struct Rec {
      static double sum(std::span<const double> v, double m) {
        const std::size_t n = v.size();
        if (n <= 8) {
          double s = 0.0;
          for (double t : v) {
            const double d = t - m;
            s += d * d;
          }
          return s;
        }
        const std::size_t half = n / 2;
        return sum(v.first(half), m) + sum(v.subspan(half), m);
      }
    };
    ss = Rec::sum(x, e.mean);
  }
  const double var = ss / static_cast<double>(e.n - 1);
  e.se = std::sqrt(var / static_cast<double>(e.n));
  return e;
}

} // namespace bmc

#endif // BMC_STATS_HPP
