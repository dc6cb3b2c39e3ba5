#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmc/rng.hpp"

namespace oracles {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double black_scholes_put(double s0, double strike, double rate, double div_yield,
                         double sigma, double expiry) {
  const double sd = sigma * std::sqrt(expiry);
  const double fwd = s0 * std::exp((rate - div_yield) * expiry);
  const double d1 = (std::log(fwd / strike) + 0.5 * sd * sd) / sd;
  const double d2 = d1 - sd;
  return std::exp(-rate * expiry) * (strike * norm_cdf(-d2) - fwd * norm_cdf(-d1));
}

double black_scholes_call(double s0, double strike, double rate, double div_yield,
                          double sigma, double expiry) {
  const double sd = sigma * std::sqrt(expiry);
  const double fwd = s0 * std::exp((rate - div_yield) * expiry);
  const double d1 = (std::log(fwd / strike) + 0.5 * sd * sd) / sd;
  const double d2 = d1 - sd;
  return std::exp(-rate * expiry) * (fwd * norm_cdf(d1) - strike * norm_cdf(d2));
}

double binomial_bermudan_put(double s0, double strike, double rate, double sigma,
                             double expiry, int steps,
                             const std::vector<double>& exercise_times) {
  const double dt = expiry / steps;
  const double up = std::exp(sigma * std::sqrt(dt));
  const double dn = 1.0 / up;
  const double grow = std::exp(rate * dt);
  const double disc = 1.0 / grow;
  const double p = (grow - dn) / (up - dn);

  std::vector<char> can_ex(static_cast<std::size_t>(steps) + 1, 0);
  for (double t : exercise_times) {
    const long lvl = std::lround(t / dt);
    if (lvl < 0 || lvl > steps) throw std::invalid_argument("exercise time outside tree");
    can_ex[static_cast<std::size_t>(lvl)] = 1;
  }
  if (!can_ex[static_cast<std::size_t>(steps)])
    throw std::invalid_argument("expiry must be an exercise time");

  std::vector<double> v(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) {
    const double s = s0 * std::pow(up, 2 * j - steps);
    v[static_cast<std::size_t>(j)] = std::max(strike - s, 0.0);
  }
  for (int i = steps - 1; i >= 0; --i) {
    for (int j = 0; j <= i; ++j) {
      double cont = disc * (p * v[static_cast<std::size_t>(j) + 1] + (1.0 - p) * v[static_cast<std::size_t>(j)]);
      if (can_ex[static_cast<std::size_t>(i)]) {
        const double s = s0 * std::pow(up, 2 * j - i);
        cont = std::max(cont, strike - s);
      }
      v[static_cast<std::size_t>(j)] = cont;
    }
  }
  return v[0];
}

void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
  constexpr double kEps = 3e-14;
  constexpr double kPiM4 = 0.7511255444649425; // pi^(-1/4)
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[static_cast<std::size_t>(i) - 2];
    for (int it = 0; it < 200; ++it) {
      double p1 = kPiM4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= kEps) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n) - 1 - i] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n) - 1 - i] = w[static_cast<std::size_t>(i)];
  }
}

namespace {

double rule_value(const bmc::Coercion& c, int start_bin, std::uint64_t rule) {
  const int nt = c.grid.n_times();
  const int nb = c.n_bins;
  std::vector<double> occ(static_cast<std::size_t>(nb), 0.0);
  occ[static_cast<std::size_t>(start_bin)] = 1.0;
  double total = 0.0;
  int decision = 0; // bit index into the rule for non-terminal permitted slots
  for (int i = 0; i < nt; ++i) {
    const bool last = i == nt - 1;
    for (int k = 0; k < nb; ++k) {
      bool stops = last;
      if (!last && c.grid.can_exercise(i)) {
        stops = (rule >> decision) & 1u;
        ++decision;
      }
      if (stops) {
        total += occ[static_cast<std::size_t>(k)] * c.value(i, k);
        occ[static_cast<std::size_t>(k)] = 0.0;
      }
    }
    if (!last) {
      std::vector<double> next(static_cast<std::size_t>(nb), 0.0);
      for (int k = 0; k < nb; ++k) {
        if (occ[static_cast<std::size_t>(k)] == 0.0) continue;
        const double* row = c.trans_row(i, k);
        for (int m2 = 0; m2 < nb; ++m2)
          next[static_cast<std::size_t>(m2)] += occ[static_cast<std::size_t>(k)] * row[m2];
      }
      occ.swap(next);
    }
  }
  return total;
}

} // namespace

double best_rule_value_brute_force(const bmc::Coercion& c, int start_bin) {
  const int nt = c.grid.n_times();
  const int nb = c.n_bins;
  int decisions = 0;
  for (int i = 0; i < nt - 1; ++i)
    if (c.grid.can_exercise(i)) decisions += nb;
  if (decisions > 20) throw std::invalid_argument("brute force: chain too large");
  double best = -1e300;
  for (std::uint64_t rule = 0; rule < (1ull << decisions); ++rule)
    best = std::max(best, rule_value(c, start_bin, rule));
  return best;
}

bmc::Coercion random_coercion(std::uint64_t seed, int n_times, int n_bins, int lockout_steps) {
  bmc::Coercion c;
  c.grid.times.resize(static_cast<std::size_t>(n_times));
  c.grid.exercise_mask.resize(static_cast<std::size_t>(n_times));
  for (int i = 0; i < n_times; ++i) {
    c.grid.times[static_cast<std::size_t>(i)] = static_cast<double>(i);
    c.grid.exercise_mask[static_cast<std::size_t>(i)] = (i >= lockout_steps) ? 1 : 0;
  }
  c.grid.exercise_mask[static_cast<std::size_t>(n_times) - 1] = 1;
  c.n_bins = n_bins;
  c.n_block = 1;
  c.edges.resize(static_cast<std::size_t>(n_times) * (n_bins - 1));
  c.values.resize(static_cast<std::size_t>(n_times) * n_bins);
  c.trans.resize(static_cast<std::size_t>(n_times - 1) * n_bins * n_bins);

  bmc::RngStream stream(seed, bmc::Purpose::Scratch);
  for (int t = 0; t < n_times; ++t) {
    bmc::Substream rs = stream.at(0, static_cast<std::uint32_t>(t));
    std::vector<double> pts(static_cast<std::size_t>(2 * n_bins - 1));
    for (double& x : pts) x = rs.uniform();
    std::sort(pts.begin(), pts.end());
    for (int k = 0; k < n_bins; ++k)
      c.values[static_cast<std::size_t>(t) * n_bins + k] = pts[static_cast<std::size_t>(2 * k)];
    for (int k = 0; k < n_bins - 1; ++k)
      c.edges[static_cast<std::size_t>(t) * (n_bins - 1) + k] =
          pts[static_cast<std::size_t>(2 * k) + 1];
  }
  for (int t = 0; t < n_times - 1; ++t) {
    bmc::Substream rs = stream.at(1, static_cast<std::uint32_t>(t));
    for (int k = 0; k < n_bins; ++k) {
      double* row = c.trans.data() +
                    (static_cast<std::size_t>(t) * n_bins + static_cast<std::size_t>(k)) * n_bins;
      double sum = 0.0;
      for (int m = 0; m < n_bins; ++m) {
        row[m] = 0.05 + rs.uniform();
        sum += row[m];
      }
      for (int m = 0; m < n_bins; ++m) row[m] /= sum;
    }
  }
  c.validate();
  return c;
}

} // namespace oracles
