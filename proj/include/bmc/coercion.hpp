#ifndef BMC_COERCION_HPP
#define BMC_COERCION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bmc/model.hpp"
#include "bmc/reward.hpp"
#include "bmc/rng.hpp"
#include "bmc/time_grid.hpp"

namespace bmc {

/// A finite-state coercion of the scalar reward process: per-time bin edges
/// and bin values placed at order statistics of a training sample, plus the
/// estimated bin-to-bin transition array.
///
/// Bin k at time t is the interval (edge[k-1], edge[k]], right-closed, with
/// the first bin open to -inf and the last open to +inf. At time 0 every
/// training path carries the same reward (the initial state is
/// deterministic), so the time-0 edges are degenerate by construction; the
/// strict interleaving property holds from time index 1 on.
struct Coercion {
  TimeGrid grid;
  int n_bins = 0;
  int n_block = 0;
  std::vector<double> edges;  // n_times x (n_bins-1), row-major
  std::vector<double> values; // n_times x n_bins
  std::vector<double> trans;  // (n_times-1) x n_bins x n_bins

  std::size_t n_sim() const {
    return 2ull * static_cast<std::size_t>(n_block) * static_cast<std::size_t>(n_bins);
  }
  double edge(int t, int k) const {
    return edges[static_cast<std::size_t>(t) * (n_bins - 1) + k];
  }
  double value(int t, int k) const {
    return values[static_cast<std::size_t>(t) * n_bins + k];
  }
  const double* trans_row(int t, int k) const {
    return trans.data() +
           (static_cast<std::size_t>(t) * n_bins + static_cast<std::size_t>(k)) * n_bins;
  }

  /// Checks strict interleaving (from time 1) and row-stochasticity.
  void validate() const;
};

/// Supplies the reward sample of every training path, one grid time at a
/// time. Lets the binning core be exercised with synthetic reward processes.
class PathSource {
 public:
  virtual ~PathSource() = default;
  virtual std::size_t n_paths() const = 0;
  /// Rewards at time 0 (out has n_paths entries).
  virtual void start(std::vector<double>& out) = 0;
  /// Advance one grid step and emit the rewards at the new time.
  virtual void advance(std::vector<double>& out) = 0;
};

/// Stage 1: simulate 2 * n_block * n_bins paths once, place edges and values
/// at order statistics of the per-time reward sample, and count bin-to-bin
/// moves. Throws if the sample has too many ties for the bins to be strictly
/// interleaved (degenerate reward distribution).
Coercion build_coercion(const ModelSpec& model, const RewardSpec& spec, const TimeGrid& grid,
                        int n_bins, int n_block, const RngStream& stream, int threads = 0);

Coercion build_coercion_from(PathSource& source, const TimeGrid& grid, int n_bins,
                             int n_block);

/// Bin index of yval at a grid time; intervals are right-closed.
int locate_bin(const Coercion& c, int t_index, double yval);

/// The coerced value: the bin value of the bin containing yval.
double coerce_value(const Coercion& c, int t_index, double yval);

struct ValueStoppingTable; // chain_dp.hpp

/// Flat artifact: magic "BMCZ1", u32 n_times, u32 n_bins, then edges, values
/// and the transition array as little-endian 64-bit floats (row-major), then
/// optionally the solved value/stopping arrays in the same layout.
void save_coercion(const Coercion& c, const ValueStoppingTable* table, const std::string& path);

/// Load an artifact; the grid must match the stored n_times. If the file
/// carries the solved arrays they are read into table_out (when given) and
/// *table_present is set.
Coercion load_coercion(const std::string& path, const TimeGrid& grid,
                       ValueStoppingTable* table_out = nullptr,
                       bool* table_present = nullptr);

} // namespace bmc

#endif // BMC_COERCION_HPP
