// price: Bermudan option bounds from a binned reward chain.
//
//   price run <config.json | preset-id> [options]
//   price sweep <dir-or-config>... [options]
//   price presets [--dump DIR]
//
// PRICE_SEED and PRICE_THREADS override the config; command-line flags
// override both.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmc/presets.hpp"
#include "bmc/report.hpp"
#include "bmc/run.hpp"

namespace fs = std::filesystem;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> scale;
  std::optional<int> threads;
  std::string out;
  std::string save_coercion;
  std::string load_coercion;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "override the config seed");
  cmd->add_option("--scale", ov.scale, "override the simulation scale");
  cmd->add_option("--threads", ov.threads, "worker threads (0 = all cores)");
  cmd->add_option("--out", ov.out, "write rows to this CSV (plus a .config.json echo)");
}

void apply_env_and_overrides(bmc::ExperimentConfig& cfg, const Overrides& ov) {
  if (const char* s = std::getenv("PRICE_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("PRICE_THREADS")) cfg.threads = std::atoi(s);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.scale) cfg.scale = *ov.scale;
  if (ov.threads) cfg.threads = *ov.threads;
  if (!ov.save_coercion.empty()) cfg.save_coercion = ov.save_coercion;
  if (!ov.load_coercion.empty()) cfg.load_coercion = ov.load_coercion;
}

bmc::ExperimentConfig resolve_config(const std::string& arg) {
  if (fs::exists(arg)) return bmc::load_config_file(arg);
  if (const bmc::Preset* p = bmc::find_preset(arg)) return p->config;
  throw std::runtime_error("no such config file or preset: " + arg);
}

std::vector<bmc::ExperimentConfig> resolve_sweep_args(const std::vector<std::string>& args) {
  std::vector<bmc::ExperimentConfig> cfgs;
  for (const std::string& arg : args) {
    if (fs::is_directory(arg)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(arg))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) cfgs.push_back(bmc::load_config_file(f.string()));
    } else {
      cfgs.push_back(resolve_config(arg));
    }
  }
  return cfgs;
}

void emit(const bmc::Report& report, const std::string& out) {
  std::cout << bmc::format_table(report);
  if (!out.empty()) {
    bmc::write_csv_file(report, out);
    bmc::write_config_echo(report, out + ".config.json");
    std::cout << "wrote " << out << " and " << out << ".config.json\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bermudan option bounds via reward-chain coercion"};
  app.require_subcommand(1);

  std::string run_arg;
  Overrides run_ov;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment");
  run_cmd->add_option("config", run_arg, "config file or preset id")->required();
  add_override_flags(run_cmd, run_ov);
  run_cmd->add_option("--save-coercion", run_ov.save_coercion, "persist the chain artifact");
  run_cmd->add_option("--load-coercion", run_ov.load_coercion, "reuse a chain artifact");

  std::vector<std::string> sweep_args;
  Overrides sweep_ov;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run many experiments into one table");
  sweep_cmd->add_option("configs", sweep_args, "config files, preset ids or directories")
      ->required();
  add_override_flags(sweep_cmd, sweep_ov);

  std::string dump_dir;
  CLI::App* presets_cmd = app.add_subcommand("presets", "list shipped table-row configs");
  presets_cmd->add_option("--dump", dump_dir, "write every preset as a JSON config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      bmc::ExperimentConfig cfg = resolve_config(run_arg);
      apply_env_and_overrides(cfg, run_ov);
      bmc::Report report;
      report.rows.push_back(bmc::run_experiment(cfg));
      emit(report, !run_ov.out.empty() ? run_ov.out : cfg.out);
      return 0;
    }
    if (*sweep_cmd) {
      std::vector<bmc::ExperimentConfig> cfgs = resolve_sweep_args(sweep_args);
      for (auto& cfg : cfgs) apply_env_and_overrides(cfg, sweep_ov);
      bmc::Report report = bmc::sweep(cfgs);
      emit(report, sweep_ov.out);
      if (report.any_failed()) {
        for (const auto& row : report.rows)
          if (row.failed) std::cerr << "row " << row.example << " failed: " << row.error << '\n';
        return 1;
      }
      return 0;
    }
    if (*presets_cmd) {
      if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        for (const bmc::Preset& p : bmc::presets()) {
          std::ofstream os(fs::path(dump_dir) / (p.id + ".json"));
          os << bmc::config_to_json(p.config).dump(2) << '\n';
        }
        std::cout << "wrote " << bmc::presets().size() << " configs to " << dump_dir << '\n';
        return 0;
      }
      for (const bmc::Preset& p : bmc::presets())
        std::cout << p.id << "  -  " << p.description << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
