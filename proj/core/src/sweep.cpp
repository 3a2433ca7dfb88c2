#include "mlo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "mlo/simulation.hpp"

namespace mlo {

Scenario with_total_load(Scenario scheme, double total_load_bps) {
  scheme.total_load_bps = total_load_bps;
  for (BssConfig& b : scheme.bss) b.load_bps.reset();
  return scheme;
}

metrics::RunReport pool_runs(std::span<const metrics::RunReport> runs) {
  if (runs.empty()) throw std::invalid_argument("pool_runs: nothing to pool");
  metrics::RunReport out;
  const metrics::RunReport& first = runs.front();
  out.scheme = first.scheme;
  out.load_bps = first.load_bps;
  out.duration_s = first.duration_s;
  out.warmup_s = first.warmup_s;
  out.config_echo = first.config_echo;
  for (const auto& r : runs) {
    out.pooled_seeds.push_back(r.seed);
    out.events += r.events;
  }
  for (std::size_t b = 0; b < first.bss.size(); ++b) {
    std::vector<metrics::BssReport> replicates;
    for (const auto& r : runs) replicates.push_back(r.bss.at(b));
    out.bss.push_back(metrics::pool(replicates));
  }
  return out;
}

namespace {

std::string describe(const Scenario& s, double load, std::uint64_t seed) {
  std::ostringstream os;
  os << s.name << "/" << load << "/" << seed;
  return os.str();
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, SweepOptions options) {
  const std::size_t n_loads = spec.loads_bps.size();
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t n_groups = spec.schemes.size() * n_loads;

  std::vector<std::vector<std::optional<metrics::RunReport>>> cells(n_groups);
  std::vector<std::optional<metrics::RunReport>> pooled(n_groups);
  std::vector<std::vector<std::string>> errors(n_groups);

  // Each group (scheme, load) runs its seeds in order on one worker so the
  // pooled report can be formed and the raw samples freed right away.
  auto run_group = [&](std::size_t g) {
    const Scenario& scheme = spec.schemes[g / n_loads];
    const double load = spec.loads_bps[g % n_loads];
    const Scenario scenario = with_total_load(scheme, load);
    cells[g].resize(n_seeds);
    std::vector<metrics::RunReport> ok;
    for (std::size_t k = 0; k < n_seeds; ++k) {
      try {
        ok.push_back(run(scenario, spec.seeds[k]));
        cells[g][k] = ok.back();
      } catch (const std::exception& e) {
        errors[g].push_back(describe(scheme, load, spec.seeds[k]) + ": " + e.what());
      }
    }
    if (!ok.empty()) {
      pooled[g] = pool_runs(ok);
      if (!options.keep_samples) {
        for (auto& b : pooled[g]->bss) metrics::strip_samples(b);
      }
    }
    if (!options.keep_samples) {
      for (auto& c : cells[g])
        if (c)
          for (auto& b : c->bss) metrics::strip_samples(b);
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_groups)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g = next++; g < n_groups; g = next++) run_group(g);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  for (std::size_t g = 0; g < n_groups; ++g) {
    for (auto& c : cells[g])
      if (c) result.runs.push_back(std::move(*c));
    if (pooled[g]) result.pooled.push_back(std::move(*pooled[g]));
    for (auto& e : errors[g]) result.errors.push_back(std::move(e));
  }
  return result;
}

}  // namespace mlo
