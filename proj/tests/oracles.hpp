// Independent reference implementations used only by tests. Nothing here may
// call into the engine's pricing path; these are the yardsticks it is
// measured against.
#ifndef BMC_TESTS_ORACLES_HPP
#define BMC_TESTS_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "bmc/coercion.hpp"
#include "bmc/time_grid.hpp"

namespace oracles {

double norm_cdf(double x);

double black_scholes_put(double s0, double strike, double rate, double div_yield,
                         double sigma, double expiry);
double black_scholes_call(double s0, double strike, double rate, double div_yield,
                          double sigma, double expiry);

/// CRR binomial tree for a Bermudan put, exercise restricted to the tree
/// levels nearest the given dates (expiry must be among them).
double binomial_bermudan_put(double s0, double strike, double rate, double sigma,
                             double expiry, int steps,
                             const std::vector<double>& exercise_times);

/// Gauss-Hermite nodes/weights for integral f(x) exp(-x^2) dx.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w);

/// E[f(Z)] for standard normal Z via Gauss-Hermite.
template <typename F>
double normal_expectation(int n, F&& f) {
  std::vector<double> x, w;
  gauss_hermite(n, x, w);
  const double inv_sqrt_pi = 0.5641895835477563;
  const double sqrt2 = 1.4142135623730951;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += w[i] * f(sqrt2 * x[i]);
  return s * inv_sqrt_pi;
}

/// Exact value of a fixed stopping rule on a chain, then the best value over
/// every (time, bin) rule. Exponential in n_bins * n_times; for tiny chains
/// only.
double best_rule_value_brute_force(const bmc::Coercion& c, int start_bin);

/// A random strictly-interleaved coercion with row-stochastic transitions,
/// values in (0, 1), and an optional lock-out prefix.
bmc::Coercion random_coercion(std::uint64_t seed, int n_times, int n_bins, int lockout_steps = 0);

} // namespace oracles

#endif // BMC_TESTS_ORACLES_HPP
