#include "bmc/run.hpp"

#include <chrono>
#include <exception>

#include "bmc/bounds.hpp"

namespace bmc {

ReportRow run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  ReportRow row;
  row.example = cfg.example;
  row.params = cfg.params;
  row.seed = cfg.seed;
  row.config_echo = config_to_json(cfg);

  const auto [rspec, model] = apply_numeraire(cfg.reward, cfg.model);
  const TimeGrid grid = cfg.make_grid();
  const SizesConfig s = cfg.scaled_sizes();

  Coercion c;
  ValueStoppingTable table;
  if (!cfg.load_coercion.empty()) {
    bool have_table = false;
    c = load_coercion(cfg.load_coercion, grid, &table, &have_table);
    if (!have_table) table = solve_chain(c);
  } else {
    c = build_coercion(model, rspec, grid, s.n_bins, s.n_block,
                       RngStream(cfg.seed, Purpose::Build), cfg.threads);
    table = solve_chain(c);
  }
  if (!cfg.save_coercion.empty()) save_coercion(c, &table, cfg.save_coercion);

  row.low = lower_bound(model, rspec, c, table, s.n_primal,
                        RngStream(cfg.seed, Purpose::Primal), cfg.threads);
  row.high = upper_bound(model, rspec, c, table, s.n_dual, s.n_sub,
                         RngStream(cfg.seed, Purpose::DualPath),
                         RngStream(cfg.seed, Purpose::DualSub), cfg.threads);
  row.european = european_value(model, rspec, grid, s.n_primal,
                                RngStream(cfg.seed, Purpose::European), cfg.threads);
  row.gap_pct = 100.0 * (row.high.mean - row.low.mean) / row.low.mean;

  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

Report sweep(const std::vector<ExperimentConfig>& cfgs) {
  Report report;
  report.rows.reserve(cfgs.size());
  for (const ExperimentConfig& cfg : cfgs) {
    try {
      report.rows.push_back(run_experiment(cfg));
    } catch (const std::exception& e) {
      ReportRow row;
      row.example = cfg.example;
      row.params = cfg.params;
      row.seed = cfg.seed;
      row.failed = true;
      row.error = e.what();
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

} // namespace bmc
