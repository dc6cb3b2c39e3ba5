#ifndef BMC_RUN_HPP
#define BMC_RUN_HPP

#include <vector>

#include "bmc/config.hpp"
#include "bmc/report.hpp"

namespace bmc {

/// Execute one experiment end to end: numeraire transform, coercion build
/// (or artifact load), chain DP, lower/upper bounds and the European
/// reference, each stage on its own stream family. (config, seed) fixes every
/// emitted number regardless of thread count.
ReportRow run_experiment(const ExperimentConfig& cfg);

/// Run several experiments and collect their rows; a failed row is recorded
/// and does not abort the rest.
Report sweep(const std::vector<ExperimentConfig>& cfgs);

} // namespace bmc

#endif // BMC_RUN_HPP
