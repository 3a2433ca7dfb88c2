#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mlo/config_io.hpp"
#include "mlo/metrics.hpp"

namespace mlo {

struct SweepOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Keep raw delay/aggregation samples in the per-seed reports.
  bool keep_samples = false;
};

struct SweepResult {
  /// One report per (scheme, load, seed), ordered scheme-major, then load,
  /// then seed, regardless of execution order.
  std::vector<metrics::RunReport> runs;
  /// One report per (scheme, load) with samples pooled across seeds.
  std::vector<metrics::RunReport> pooled;
  /// Failed cells, described as "scheme/load/seed: reason".
  std::vector<std::string> errors;
};

/// The scheme with its total load replaced by `total_load_bps` (even split).
[[nodiscard]] Scenario with_total_load(Scenario scheme, double total_load_bps);

/// Pools per-seed reports of one (scheme, load) cell.
[[nodiscard]] metrics::RunReport pool_runs(std::span<const metrics::RunReport> runs);

[[nodiscard]] SweepResult sweep(const SweepSpec& spec, SweepOptions options = {});

}  // namespace mlo
