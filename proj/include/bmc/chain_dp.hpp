#ifndef BMC_CHAIN_DP_HPP
#define BMC_CHAIN_DP_HPP

#include <cstdint>
#include <vector>

#include "bmc/coercion.hpp"
#include "bmc/time_grid.hpp"

namespace bmc {

/// Dynamic-programming solution of the coerced chain: the value array V, the
/// stopping indicator array S, and the one-step continuation values (kept so
/// the dual estimator can reuse exactly the sums the recursion produced).
struct ValueStoppingTable {
  TimeGrid grid;
  int n_bins = 0;
  std::vector<double> value;       // n_times x n_bins
  std::vector<std::uint8_t> stop;  // n_times x n_bins
  std::vector<double> cont;        // n_times x n_bins, last row zero

  double v(int t, int k) const { return value[static_cast<std::size_t>(t) * n_bins + k]; }
  bool s(int t, int k) const { return stop[static_cast<std::size_t>(t) * n_bins + k] != 0; }
  double c(int t, int k) const { return cont[static_cast<std::size_t>(t) * n_bins + k]; }

  /// Recompute `cont` from a coercion (used after loading an artifact, which
  /// stores only V and S).
  void rebuild_continuation(const Coercion& c);
};

/// Backward induction on the chain. Exercise is only allowed where the grid
/// permits it; at permitted times a tie between the immediate reward and the
/// continuation value stops.
ValueStoppingTable solve_chain(const Coercion& c);

/// V(t, y) and S(t, y): table lookups through the bin partition.
double value_at(const ValueStoppingTable& table, const Coercion& c, int t_index, double yval);
bool stop_at(const ValueStoppingTable& table, const Coercion& c, int t_index, double yval);

/// The chain's value seen from time 0: V(0, g(0, X_0)).
double initial_value(const ValueStoppingTable& table, const Coercion& c, double y0);

} // namespace bmc

#endif // BMC_CHAIN_DP_HPP
