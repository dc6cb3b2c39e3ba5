#ifndef BMC_CONFIG_HPP
#define BMC_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "bmc/model.hpp"
#include "bmc/reward.hpp"
#include "bmc/time_grid.hpp"

namespace bmc {

struct GridConfig {
  int n_times = 40;
  double horizon = 1.0;
  double lockout = 0.0;
};

struct SizesConfig {
  int n_bins = 200;
  int n_block = 200;
  std::size_t n_primal = 50000;
  std::size_t n_dual = 400;
  std::size_t n_sub = 60;
};

/// One experiment: model + reward + grid + simulation sizes + seed. `scale`
/// shrinks the simulation effort for desk runs: it multiplies n_block,
/// n_primal and n_dual directly, while n_bins and n_sub scale by sqrt(scale)
/// (floored at 10) so bin occupancy and subsimulation noise stay balanced.
struct ExperimentConfig {
  std::string example;   // label for report rows
  std::string params;    // short "d=2"-style echo of the varied parameters
  ModelSpec model;
  RewardSpec reward;
  GridConfig grid;
  SizesConfig sizes;
  std::uint64_t seed = 1;
  double scale = 0.25;
  std::string out;            // optional CSV path
  std::string save_coercion;  // optional artifact paths
  std::string load_coercion;
  int threads = 0;

  void validate() const;
  SizesConfig scaled_sizes() const;
  TimeGrid make_grid() const { return make_uniform_grid(grid.horizon, grid.n_times, grid.lockout); }
};

ExperimentConfig config_from_json(const nlohmann::json& j);
/// Emits every field with defaults resolved; parsing the result reproduces
/// the run bit for bit.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::string& path);

} // namespace bmc

#endif // BMC_CONFIG_HPP
