#include "bmc/coercion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "bmc/chain_dp.hpp"
#include "bmc/parallel.hpp"

namespace bmc {

void Coercion::validate() const {
  grid.validate();
  const int nt = grid.n_times();
  if (n_bins < 2) throw std::invalid_argument("Coercion: n_bins must be >= 2");
  if (n_block < 1) throw std::invalid_argument("Coercion: n_block must be >= 1");
  if (edges.size() != static_cast<std::size_t>(nt) * (n_bins - 1) ||
      values.size() != static_cast<std::size_t>(nt) * n_bins ||
      trans.size() != static_cast<std::size_t>(nt - 1) * n_bins * n_bins)
    throw std::invalid_argument("Coercion: array sizes inconsistent with grid/n_bins");
  for (int t = 1; t < nt; ++t) {
    // a row may be fully degenerate (single-state time); otherwise it must
    // interleave strictly
    if (n_bins >= 2 && value(t, 0) == value(t, n_bins - 1)) continue;
    for (int k = 0; k < n_bins - 1; ++k) {
      if (!(value(t, k) < edge(t, k)) || !(edge(t, k) < value(t, k + 1)))
        throw std::runtime_error("Coercion: bin values and edges do not interleave at time " +
                                 std::to_string(t));
    }
  }
  for (int t = 0; t < nt - 1; ++t) {
    for (int k = 0; k < n_bins; ++k) {
      const double* row = trans_row(t, k);
      double sum = 0.0;
      for (int m = 0; m < n_bins; ++m) {
        if (row[m] < 0.0) throw std::runtime_error("Coercion: negative transition probability");
        sum += row[m];
      }
      if (std::fabs(sum - 1.0) > 1e-12)
        throw std::runtime_error("Coercion: transition row does not sum to 1");
    }
  }
}

int locate_bin(const Coercion& c, int t_index, double yval) {
  const double* first = c.edges.data() + static_cast<std::size_t>(t_index) * (c.n_bins - 1);
  const double* last = first + (c.n_bins - 1);
  // first edge >= yval <=> yval lies in (edge[k-1], edge[k]]
  return static_cast<int>(std::lower_bound(first, last, yval) - first);
}

double coerce_value(const Coercion& c, int t_index, double yval) {
  return c.value(t_index, locate_bin(c, t_index, yval));
}

namespace {

/// Training paths of a (model, reward) pair, stepped in path blocks.
class ModelPathSource final : public PathSource {
 public:
  ModelPathSource(const ModelSpec& model, const RewardSpec& spec, const TimeGrid& grid,
                  std::size_t n, const RngStream& stream, int threads)
      : model_(model), grid_(grid), eval_(spec, model), stream_(stream), threads_(threads) {
    // partition the sample into fixed blocks so stepping parallelizes while
    // results stay independent of the thread count
    constexpr std::size_t kBlock = 8192;
    for (std::size_t at = 0; at < n; at += kBlock) {
      const std::size_t len = std::min(kBlock, n - at);
      blocks_.push_back(init_paths(model_, grid_, len, stream_, at));
    }
    n_ = n;
  }

  std::size_t n_paths() const override { return n_; }

  void start(std::vector<double>& out) override { collect(out); }

  void advance(std::vector<double>& out) override {
    parallel_for(blocks_.size(), threads_, [&](std::size_t b0, std::size_t b1) {
      for (std::size_t b = b0; b < b1; ++b) step(model_, grid_, blocks_[b], stream_);
    });
    collect(out);
  }

 private:
  void collect(std::vector<double>& out) {
    out.resize(n_);
    parallel_for(blocks_.size(), threads_, [&](std::size_t b0, std::size_t b1) {
      for (std::size_t b = b0; b < b1; ++b) {
        const StateBlock& blk = blocks_[b];
        for (std::size_t p = 0; p < blk.n; ++p)
          out[blk.first_path + p] = eval_(grid_, blk, p);
      }
    });
  }

  const ModelSpec& model_;
  const TimeGrid& grid_;
  RewardEvaluator eval_;
  RngStream stream_;
  int threads_;
  std::vector<StateBlock> blocks_;
  std::size_t n_ = 0;
};

} // namespace

Coercion build_coercion_from(PathSource& source, const TimeGrid& grid, int n_bins,
                             int n_block) {
  if (n_bins < 2) throw std::invalid_argument("build_coercion: n_bins must be >= 2");
  if (n_block < 1) throw std::invalid_argument("build_coercion: n_block must be >= 1");
  const int nt = grid.n_times();
  const std::size_t n_sim = 2ull * static_cast<std::size_t>(n_block) * n_bins;
  if (source.n_paths() != n_sim)
    throw std::invalid_argument("build_coercion: source must supply 2*n_block*n_bins paths");

  Coercion c;
  c.grid = grid;
  c.n_bins = n_bins;
  c.n_block = n_block;
  c.edges.assign(static_cast<std::size_t>(nt) * (n_bins - 1), 0.0);
  c.values.assign(static_cast<std::size_t>(nt) * n_bins, 0.0);
  c.trans.assign(static_cast<std::size_t>(nt - 1) * n_bins * n_bins, 0.0);

  std::vector<double> rewards(n_sim);
  std::vector<std::pair<double, std::uint32_t>> order(n_sim);
  std::vector<std::int32_t> bin_now(n_sim), bin_prev(n_sim);
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(n_bins) * n_bins);
  const std::size_t per_bin = 2ull * static_cast<std::size_t>(n_block);

  for (int t = 0; t < nt; ++t) {
    if (t == 0)
      source.start(rewards);
    else
      source.advance(rewards);

    // sort (reward, path) pairs; the path index breaks exact ties
    // deterministically
    for (std::size_t j = 0; j < n_sim; ++j)
      order[j] = {rewards[j], static_cast<std::uint32_t>(j)};
    std::sort(order.begin(), order.end());

    // order statistics: edge k at rank 2k*n_block, value k at (2k-1)*n_block
    // (1-indexed), and bin membership straight from the rank
    for (int k = 1; k <= n_bins - 1; ++k)
      c.edges[static_cast<std::size_t>(t) * (n_bins - 1) + (k - 1)] =
          order[static_cast<std::size_t>(2 * k) * n_block - 1].first;
    for (int k = 1; k <= n_bins; ++k)
      c.values[static_cast<std::size_t>(t) * n_bins + (k - 1)] =
          order[static_cast<std::size_t>(2 * k - 1) * n_block - 1].first;
    for (std::size_t rank = 0; rank < n_sim; ++rank)
      bin_now[order[rank].second] = static_cast<std::int32_t>(rank / per_bin);

    if (t >= 1) {
      // A fully constant sample marks a time where the reward is still
      // deterministic (time 0 always is; a lagged average keeps it so one
      // step longer). That is a legitimate single-state time. Partial ties
      // that collapse order statistics mean the reward law has atoms and the
      // perturbation is missing; a constant sample at expiry means the whole
      // model is deterministic. Both are reported, not binned.
      const bool constant_sample = order.front().first == order.back().first;
      if (constant_sample && t == nt - 1)
        throw std::runtime_error(
            "build_coercion: the terminal reward sample is a single value; "
            "the model is deterministic and there is nothing to price");
      if (!constant_sample) {
        for (int k = 0; k < n_bins - 1; ++k) {
          const double lo = c.value(t, k);
          const double ed = c.edge(t, k);
          const double hi = c.value(t, k + 1);
          if (!(lo < ed) || !(ed < hi))
            throw std::runtime_error(
                "build_coercion: tied rewards collapse bins at time index " +
                std::to_string(t) +
                "; the reward sample is degenerate (is the tie-breaking epsilon disabled?)");
        }
      }
      std::fill(counts.begin(), counts.end(), 0u);
      for (std::size_t j = 0; j < n_sim; ++j)
        ++counts[static_cast<std::size_t>(bin_prev[j]) * n_bins + bin_now[j]];
      const double denom = static_cast<double>(per_bin);
      double* row = c.trans.data() + static_cast<std::size_t>(t - 1) * n_bins * n_bins;
      for (std::size_t i = 0; i < static_cast<std::size_t>(n_bins) * n_bins; ++i)
        row[i] = counts[i] / denom;
    }
    std::swap(bin_now, bin_prev);
  }
  return c;
}

Coercion build_coercion(const ModelSpec& model, const RewardSpec& spec, const TimeGrid& grid,
                        int n_bins, int n_block, const RngStream& stream, int threads) {
  const std::size_t n_sim = 2ull * static_cast<std::size_t>(n_block) * n_bins;
  ModelPathSource source(model, spec, grid, n_sim, stream, threads);
  return build_coercion_from(source, grid, n_bins, n_block);
}

// ---------------------------------------------------------------------------
// artifact persistence

namespace {

constexpr char kMagic[5] = {'B', 'M', 'C', 'Z', '1'};

void put_u32(std::FILE* f, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  if (std::fwrite(b, 1, 4, f) != 4) throw std::runtime_error("artifact: write failed");
}

std::uint32_t get_u32(std::FILE* f) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) throw std::runtime_error("artifact: truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::FILE* f, const std::vector<double>& v) {
  static_assert(sizeof(double) == 8);
  for (double x : v) {
    std::uint64_t u;
    std::memcpy(&u, &x, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    if (std::fwrite(b, 1, 8, f) != 8) throw std::runtime_error("artifact: write failed");
  }
}

void get_f64(std::FILE* f, std::vector<double>& v) {
  for (double& x : v) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw std::runtime_error("artifact: truncated file");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    std::memcpy(&x, &u, 8);
  }
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

} // namespace

void save_coercion(const Coercion& c, const ValueStoppingTable* table,
                   const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("artifact: cannot open " + path + " for writing");
  if (std::fwrite(kMagic, 1, 5, f.get()) != 5) throw std::runtime_error("artifact: write failed");
  put_u32(f.get(), static_cast<std::uint32_t>(c.grid.n_times()));
  put_u32(f.get(), static_cast<std::uint32_t>(c.n_bins));
  put_f64(f.get(), c.edges);
  put_f64(f.get(), c.values);
  put_f64(f.get(), c.trans);
  if (table) {
    put_f64(f.get(), table->value);
    std::vector<double> stop(table->stop.begin(), table->stop.end());
    put_f64(f.get(), stop);
  }
}

Coercion load_coercion(const std::string& path, const TimeGrid& grid,
                       ValueStoppingTable* table_out, bool* table_present) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("artifact: cannot open " + path);
  char magic[5];
  if (std::fread(magic, 1, 5, f.get()) != 5 || std::memcmp(magic, kMagic, 5) != 0)
    throw std::runtime_error("artifact: bad magic in " + path);
  const std::uint32_t nt = get_u32(f.get());
  const std::uint32_t nb = get_u32(f.get());
  if (nt != static_cast<std::uint32_t>(grid.n_times()))
    throw std::runtime_error("artifact: grid has " + std::to_string(grid.n_times()) +
                             " times but file has " + std::to_string(nt));
  if (nb < 2) throw std::runtime_error("artifact: bad bin count");

  // the optional value/stopping tail is detected by file length
  const long data_at = std::ftell(f.get());
  std::fseek(f.get(), 0, SEEK_END);
  const long file_end = std::ftell(f.get());
  std::fseek(f.get(), data_at, SEEK_SET);
  const std::size_t core_doubles = static_cast<std::size_t>(nt) * (nb - 1) +
                                   static_cast<std::size_t>(nt) * nb +
                                   static_cast<std::size_t>(nt - 1) * nb * nb;
  const std::size_t tail_doubles = 2ull * nt * nb;
  const std::size_t payload = static_cast<std::size_t>(file_end - data_at);
  bool has_table;
  if (payload == 8 * core_doubles)
    has_table = false;
  else if (payload == 8 * (core_doubles + tail_doubles))
    has_table = true;
  else
    throw std::runtime_error("artifact: unexpected file size in " + path);

  Coercion c;
  c.grid = grid;
  c.n_bins = static_cast<int>(nb);
  c.n_block = 1; // not stored; only the arrays matter after a build
  c.edges.resize(static_cast<std::size_t>(nt) * (nb - 1));
  c.values.resize(static_cast<std::size_t>(nt) * nb);
  c.trans.resize(static_cast<std::size_t>(nt - 1) * nb * nb);
  get_f64(f.get(), c.edges);
  get_f64(f.get(), c.values);
  get_f64(f.get(), c.trans);

  if (table_present) *table_present = has_table;
  if (table_out && has_table) {
    table_out->grid = grid;
    table_out->n_bins = static_cast<int>(nb);
    table_out->value.resize(static_cast<std::size_t>(nt) * nb);
    get_f64(f.get(), table_out->value);
    std::vector<double> stop(static_cast<std::size_t>(nt) * nb);
    get_f64(f.get(), stop);
    table_out->stop.assign(stop.size(), 0);
    for (std::size_t i = 0; i < stop.size(); ++i) table_out->stop[i] = stop[i] != 0.0 ? 1 : 0;
    table_out->rebuild_continuation(c);
  }
  return c;
}

} // namespace bmc
