#ifndef BMC_BOUNDS_HPP
#define BMC_BOUNDS_HPP

#include <cstddef>
#include <vector>

#include "bmc/chain_dp.hpp"
#include "bmc/coercion.hpp"
#include "bmc/model.hpp"
#include "bmc/reward.hpp"
#include "bmc/rng.hpp"
#include "bmc/stats.hpp"

namespace bmc {

/// Per-step sample statistics of the estimated martingale increments
/// (they should be centered at zero; tests check this).
struct UpperDiagnostics {
  std::vector<double> incr_mean; // one entry per transition
  std::vector<double> incr_se;
};

/// Lower bound: evaluate the chain-induced stopping rule on fresh paths of
/// the true process. Stops at the first permitted time whose binned reward
/// says stop (expiry always stops), and averages the stopped rewards.
BoundEstimate lower_bound(const ModelSpec& model, const RewardSpec& spec, const Coercion& c,
                          const ValueStoppingTable& table, std::size_t n_primal,
                          const RngStream& stream, int threads = 0);

/// Upper bound: E[sup_t (Z_t - M_t)] for the dual martingale assembled from
/// the chain's value table. Each increment is V(t+1, Z_{t+1}) minus a
/// subsimulated estimate of its conditional expectation; the subsimulation
/// draws come from their own stream family, so the estimated increments stay
/// a martingale and the estimator is biased high, never low. Lock-out times
/// are excluded from the sup but the martingale still accrues there.
BoundEstimate upper_bound(const ModelSpec& model, const RewardSpec& spec, const Coercion& c,
                          const ValueStoppingTable& table, std::size_t n_dual,
                          std::size_t n_sub, const RngStream& path_stream,
                          const RngStream& sub_stream, int threads = 0,
                          UpperDiagnostics* diag = nullptr);

/// European reference: mean of the actual (unbinned) reward at expiry.
BoundEstimate european_value(const ModelSpec& model, const RewardSpec& spec,
                             const TimeGrid& grid, std::size_t n_paths,
                             const RngStream& stream, int threads = 0);

/// The coerced chain run as its own Markov model (states = bin values,
/// dynamics = the estimated transition array). Used for self-consistency
/// checks: with exact conditional expectations the dual bound equals the
/// chain's DP value on every path.
BoundEstimate chain_lower_bound(const Coercion& c, const ValueStoppingTable& table,
                                int start_bin, std::size_t n, const RngStream& stream,
                                int threads = 0);

/// n_sub == 0 selects the exact mode: conditional expectations are read off
/// the transition array instead of being subsimulated.
BoundEstimate chain_upper_bound(const Coercion& c, const ValueStoppingTable& table,
                                int start_bin, std::size_t n, std::size_t n_sub,
                                const RngStream& path_stream, const RngStream& sub_stream,
                                int threads = 0);

} // namespace bmc

#endif // BMC_BOUNDS_HPP
