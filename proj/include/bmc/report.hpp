#ifndef BMC_REPORT_HPP
#define BMC_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmc/stats.hpp"

namespace bmc {

struct ReportRow {
  std::string example;
  std::string params;
  BoundEstimate european;
  BoundEstimate low;
  BoundEstimate high;
  double gap_pct = 0.0; // 100 * (high.mean - low.mean) / low.mean
  double seconds = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json config_echo; // resolved config; re-running it reproduces the row
  bool failed = false;
  std::string error;
};

struct Report {
  std::vector<ReportRow> rows;
  bool any_failed() const {
    for (const auto& r : rows)
      if (r.failed) return true;
    return false;
  }
};

/// Fixed column order:
/// example,params,eur_mean,eur_se,low_mean,low_se,high_mean,high_se,gap_pct,seconds
void write_csv(const Report& report, std::ostream& os);
void write_csv_file(const Report& report, const std::string& path);

/// JSON array of the resolved per-row configs (the reproducibility echo).
void write_config_echo(const Report& report, const std::string& path);

/// Aligned text table for the terminal.
std::string format_table(const Report& report);

} // namespace bmc

#endif // BMC_REPORT_HPP
