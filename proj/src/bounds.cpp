#include "bmc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bmc/parallel.hpp"

namespace bmc {

namespace {

constexpr std::size_t kPathBlock = 2048;

} // namespace

BoundEstimate lower_bound(const ModelSpec& model, const RewardSpec& spec, const Coercion& c,
                          const ValueStoppingTable& table, std::size_t n_primal,
                          const RngStream& stream, int threads) {
  if (n_primal == 0) throw std::invalid_argument("lower_bound: n_primal must be >= 1");
  const TimeGrid& grid = c.grid;
  const int nt = grid.n_times();
  RewardEvaluator eval(spec, model);
  std::vector<double> stopped(n_primal);

  const std::size_t n_blocks = (n_primal + kPathBlock - 1) / kPathBlock;
  parallel_for(n_blocks, threads, 1, [&](std::size_t b0, std::size_t b1) {
    std::vector<std::uint8_t> alive;
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t at = b * kPathBlock;
      const std::size_t len = std::min(kPathBlock, n_primal - at);
      StateBlock block = init_paths(model, grid, len, stream, at);
      alive.assign(len, 1);
      std::size_t n_alive = len;
      for (int i = 0; i < nt && n_alive > 0; ++i) {
        if (i > 0) step(model, grid, block, stream);
        if (!grid.can_exercise(i)) continue;
        const bool last = (i == nt - 1);
        for (std::size_t p = 0; p < len; ++p) {
          if (!alive[p]) continue;
          const double g = eval(grid, block, p);
          if (last || stop_at(table, c, i, g)) {
            stopped[at + p] = g;
            alive[p] = 0;
            --n_alive;
          }
        }
      }
    }
  });
  return estimate_from_samples(stopped);
}

BoundEstimate upper_bound(const ModelSpec& model, const RewardSpec& spec, const Coercion& c,
                          const ValueStoppingTable& table, std::size_t n_dual,
                          std::size_t n_sub, const RngStream& path_stream,
                          const RngStream& sub_stream, int threads, UpperDiagnostics* diag) {
  if (n_dual == 0) throw std::invalid_argument("upper_bound: n_dual must be >= 1");
  if (n_sub == 0) throw std::invalid_argument("upper_bound: n_sub must be >= 1");
  const TimeGrid& grid = c.grid;
  const int nt = grid.n_times();
  RewardEvaluator eval(spec, model);
  std::vector<double> sup(n_dual);
  std::vector<double> incr; // per (path, step) when diagnostics are requested
  if (diag) incr.assign(n_dual * static_cast<std::size_t>(nt - 1), 0.0);

  parallel_for(n_dual, threads, 8, [&](std::size_t p0, std::size_t p1) {
    StateBlock successors; // reused workspace for subsimulations
    for (std::size_t p = p0; p < p1; ++p) {
      StateBlock path = init_paths(model, grid, 1, path_stream, p);
      double mart = 0.0;
      double best = -std::numeric_limits<double>::infinity();
      if (grid.can_exercise(0)) best = eval(grid, path, 0);
      for (int i = 0; i + 1 < nt; ++i) {
        substep_into(model, grid, path, 0, n_sub, sub_stream, successors);
        double e_hat = 0.0;
        for (std::size_t j = 0; j < n_sub; ++j)
          e_hat += value_at(table, c, i + 1, eval(grid, successors, j));
        e_hat /= static_cast<double>(n_sub);

        step(model, grid, path, path_stream);
        const double z = eval(grid, path, 0);
        const double delta = value_at(table, c, i + 1, z) - e_hat;
        mart += delta;
        if (diag) incr[p * static_cast<std::size_t>(nt - 1) + i] = delta;
        if (grid.can_exercise(i + 1)) best = std::max(best, z - mart);
      }
      sup[p] = best;
    }
  });

  if (diag) {
    diag->incr_mean.resize(static_cast<std::size_t>(nt - 1));
    diag->incr_se.resize(static_cast<std::size_t>(nt - 1));
    std::vector<double> col(n_dual);
    for (int i = 0; i + 1 < nt; ++i) {
      for (std::size_t p = 0; p < n_dual; ++p)
        col[p] = incr[p * static_cast<std::size_t>(nt - 1) + i];
      const BoundEstimate e = estimate_from_samples(col);
      diag->incr_mean[static_cast<std::size_t>(i)] = e.mean;
      diag->incr_se[static_cast<std::size_t>(i)] = e.se;
    }
  }
  return estimate_from_samples(sup);
}

BoundEstimate european_value(const ModelSpec& model, const RewardSpec& spec,
                             const TimeGrid& grid, std::size_t n_paths,
                             const RngStream& stream, int threads) {
  if (n_paths == 0) throw std::invalid_argument("european_value: n_paths must be >= 1");
  const int nt = grid.n_times();
  RewardEvaluator eval(spec, model);
  std::vector<double> terminal(n_paths);
  const std::size_t n_blocks = (n_paths + kPathBlock - 1) / kPathBlock;
  parallel_for(n_blocks, threads, 1, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t at = b * kPathBlock;
      const std::size_t len = std::min(kPathBlock, n_paths - at);
      StateBlock block = init_paths(model, grid, len, stream, at);
      for (int i = 1; i < nt; ++i) step(model, grid, block, stream);
      for (std::size_t p = 0; p < len; ++p) terminal[at + p] = eval(grid, block, p);
    }
  });
  return estimate_from_samples(terminal);
}

// ---------------------------------------------------------------------------
// the coerced chain simulated as its own model

namespace {

int sample_next_bin(const double* row, int n_bins, double u) {
  double acc = 0.0;
  for (int m = 0; m < n_bins - 1; ++m) {
    acc += row[m];
    if (u <= acc) return m;
  }
  return n_bins - 1;
}

} // namespace

BoundEstimate chain_lower_bound(const Coercion& c, const ValueStoppingTable& table,
                                int start_bin, std::size_t n, const RngStream& stream,
                                int threads) {
  if (n == 0) throw std::invalid_argument("chain_lower_bound: n must be >= 1");
  const int nt = c.grid.n_times();
  std::vector<double> stopped(n);
  parallel_for(n, threads, [&](std::size_t p0, std::size_t p1) {
    for (std::size_t p = p0; p < p1; ++p) {
      int k = start_bin;
      double out = c.value(nt - 1, k); // overwritten unless we coast to expiry
      for (int i = 0; i < nt; ++i) {
        if (c.grid.can_exercise(i) && table.s(i, k)) {
          out = c.value(i, k);
          break;
        }
        Substream rs = stream.at(p, static_cast<std::uint32_t>(i + 1));
        k = sample_next_bin(c.trans_row(i, k), c.n_bins, rs.uniform());
      }
      stopped[p] = out;
    }
  });
  return estimate_from_samples(stopped);
}

BoundEstimate chain_upper_bound(const Coercion& c, const ValueStoppingTable& table,
                                int start_bin, std::size_t n, std::size_t n_sub,
                                const RngStream& path_stream, const RngStream& sub_stream,
                                int threads) {
  if (n == 0) throw std::invalid_argument("chain_upper_bound: n must be >= 1");
  const int nt = c.grid.n_times();
  const int nb = c.n_bins;
  std::vector<double> sup(n);
  parallel_for(n, threads, [&](std::size_t p0, std::size_t p1) {
    for (std::size_t p = p0; p < p1; ++p) {
      int k = start_bin;
      double mart = 0.0;
      double best = -std::numeric_limits<double>::infinity();
      if (c.grid.can_exercise(0)) best = c.value(0, k);
      for (int i = 0; i + 1 < nt; ++i) {
        double e_hat;
        if (n_sub == 0) {
          e_hat = table.c(i, k); // exact conditional expectation under P
        } else {
          e_hat = 0.0;
          for (std::size_t j = 0; j < n_sub; ++j) {
            Substream rs = sub_stream.at(p, static_cast<std::uint32_t>(i + 1),
                                         static_cast<std::uint32_t>(j + 1));
            e_hat += table.v(i + 1, sample_next_bin(c.trans_row(i, k), nb, rs.uniform()));
          }
          e_hat /= static_cast<double>(n_sub);
        }
        Substream rs = path_stream.at(p, static_cast<std::uint32_t>(i + 1));
        k = sample_next_bin(c.trans_row(i, k), nb, rs.uniform());
        mart += table.v(i + 1, k) - e_hat;
        if (c.grid.can_exercise(i + 1)) best = std::max(best, c.value(i + 1, k) - mart);
      }
      sup[p] = best;
    }
  });
  return estimate_from_samples(sup);
}

} // namespace bmc
