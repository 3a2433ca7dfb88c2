// mlosim: command-line front end for the multi-link channel access simulator.
//
//   mlosim run <scenario.yaml> [--seed N] [--out DIR] [--format csv|json]
//   mlosim sweep <sweep.yaml> [--out DIR] [--format csv|json]
//   mlosim preset <fig2|fig4|fig5> [--load-grid 0.1,0.5,...] [--seeds 1,2,3]
//
// Common overrides: --duration S, --warmup F, --threads N.
// Exit codes: 0 success, 1 runtime failure, 2 invalid input, 3 some sweep
// cells failed.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mlo/config_io.hpp"
#include "mlo/export.hpp"
#include "mlo/scenario.hpp"
#include "mlo/simulation.hpp"
#include "mlo/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string out_dir;
  std::string format = "csv";
  std::optional<double> duration_s;
  std::optional<double> warmup;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_dir, "Directory for runs.* and pooled.* outputs");
  cmd->add_option("--format", c.format, "Export format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--duration", c.duration_s, "Simulated seconds per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--warmup", c.warmup, "Fraction of each run discarded as warmup")
      ->check(CLI::Range(0.0, 0.99));
  cmd->add_option("--threads", c.threads, "Worker threads for sweeps (0 = all cores)");
}

void apply_overrides(mlo::Scenario& s, const Common& c) {
  if (c.duration_s) s.duration_s = *c.duration_s;
  if (c.warmup) s.warmup_fraction = *c.warmup;
}

void write_table(std::ostream& out, std::span<const mlo::metrics::RunReport> reports,
                 const std::string& format) {
  if (format == "json") {
    out << mlo::to_json(reports, /*include_config=*/true) << '\n';
  } else {
    mlo::write_csv(out, reports);
  }
}

void emit(const Common& c, std::span<const mlo::metrics::RunReport> runs,
          std::span<const mlo::metrics::RunReport> pooled) {
  if (c.out_dir.empty()) {
    write_table(std::cout, pooled.empty() ? runs : pooled, c.format);
    return;
  }
  fs::create_directories(c.out_dir);
  const std::string ext = "." + c.format;
  {
    std::ofstream f(fs::path(c.out_dir) / ("runs" + ext));
    write_table(f, runs, c.format);
  }
  if (!pooled.empty()) {
    std::ofstream f(fs::path(c.out_dir) / ("pooled" + ext));
    write_table(f, pooled, c.format);
  }
  std::cerr << "wrote " << runs.size() << " run(s) to " << c.out_dir << '\n';
}

int report_errors(const mlo::SweepResult& r) {
  for (const auto& e : r.errors) std::cerr << "cell failed: " << e << '\n';
  return r.errors.empty() ? 0 : 3;
}

int cmd_run(const std::string& file, std::optional<std::uint64_t> seed, const Common& c) {
  mlo::Scenario s = mlo::load_scenario(file);
  apply_overrides(s, c);
  mlo::validate(s);
  const std::vector<std::uint64_t> seeds = seed ? std::vector{*seed} : s.seeds;
  std::vector<mlo::metrics::RunReport> runs;
  for (std::uint64_t k : seeds) runs.push_back(mlo::run(s, k));
  std::vector<mlo::metrics::RunReport> pooled;
  if (runs.size() > 1) pooled.push_back(mlo::pool_runs(runs));
  emit(c, runs, pooled);
  return 0;
}

int cmd_sweep(const std::string& file, const Common& c) {
  mlo::SweepSpec spec = mlo::load_sweep(file);
  for (auto& s : spec.schemes) {
    apply_overrides(s, c);
    mlo::validate(mlo::with_total_load(s, spec.loads_bps.front()));
  }
  const auto result = mlo::sweep(spec, mlo::SweepOptions{c.threads, false});
  emit(c, result.runs, result.pooled);
  return report_errors(result);
}

int cmd_preset(const std::string& name, const std::vector<double>& grid_gbps,
               const std::vector<std::uint64_t>& seeds, const std::string& scenarios_dir,
               const Common& c) {
  mlo::SweepSpec spec;
  spec.schemes = mlo::preset(name, 0.0);
  for (auto& s : spec.schemes) apply_overrides(s, c);
  if (grid_gbps.empty()) {
    spec.loads_bps = mlo::default_load_grid_bps();
  } else {
    for (double g : grid_gbps) spec.loads_bps.push_back(g * 1e9);
  }
  spec.seeds = seeds;
  if (!scenarios_dir.empty()) {
    fs::create_directories(scenarios_dir);
    for (const auto& s : spec.schemes) {
      std::string stem = name + "_" + s.name;
      for (char& ch : stem)
        if (ch == ':' || ch == '+') ch = '_';
      std::ofstream f(fs::path(scenarios_dir) / (stem + ".yaml"));
      f << mlo::to_yaml(mlo::with_total_load(s, spec.loads_bps.back()));
    }
    std::cerr << "wrote " << spec.schemes.size() << " scenario file(s) to "
              << scenarios_dir << '\n';
    return 0;
  }
  const auto result = mlo::sweep(spec, mlo::SweepOptions{c.threads, false});
  emit(c, result.runs, result.pooled);
  return report_errors(result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator of Wi-Fi multi-link channel access"};
  app.require_subcommand(1);

  Common run_c, sweep_c, preset_c;

  auto* run = app.add_subcommand("run", "Run one scenario file");
  std::string scenario_file;
  std::optional<std::uint64_t> seed;
  run->add_option("scenario", scenario_file, "Scenario YAML file")->required();
  run->add_option("--seed", seed, "Run only this seed instead of the file's seed list");
  add_common(run, run_c);

  auto* sw = app.add_subcommand("sweep", "Run a sweep spec (schemes x loads x seeds)");
  std::string sweep_file;
  sw->add_option("spec", sweep_file, "Sweep YAML file")->required();
  add_common(sw, sweep_c);

  auto* pr = app.add_subcommand("preset", "Sweep a built-in scheme set");
  std::string preset_name;
  std::vector<double> grid;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string scenarios_dir;
  pr->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember(mlo::preset_names()));
  pr->add_option("--load-grid", grid, "Total loads in Gb/s (default 0.1..2.5 grid)")
      ->delimiter(',');
  pr->add_option("--seeds", seeds, "Seeds to replicate")->delimiter(',');
  pr->add_option("--write-scenarios", scenarios_dir,
                 "Write the preset's scenario files to DIR instead of running");
  add_common(pr, preset_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scenario_file, seed, run_c);
    if (*sw) return cmd_sweep(sweep_file, sweep_c);
    if (*pr) return cmd_preset(preset_name, grid, seeds, scenarios_dir, preset_c);
  } catch (const mlo::ValidationError& e) {
    std::cerr << "invalid scenario:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return 2;
  } catch (const mlo::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
