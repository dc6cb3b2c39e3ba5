#ifndef BMC_PRESETS_HPP
#define BMC_PRESETS_HPP

#include <string>
#include <vector>

#include "bmc/config.hpp"

namespace bmc {

/// Shipped configurations: one per benchmark table row, named
/// table<k>_<varied parameters>. All default to desk scale (0.25); pass
/// scale 1 to reproduce the published runs in full.
struct Preset {
  std::string id;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& id);

} // namespace bmc

#endif // BMC_PRESETS_HPP
