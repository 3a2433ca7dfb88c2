#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlo/medium.hpp"
#include "mlo/mld.hpp"
#include "mlo/time.hpp"

namespace mlo::metrics {

/// Nearest-rank percentile of already sorted samples: the ceil(p/100 * N)-th
/// order statistic (rank clamped to [1, N]). Absent for an empty set.
template <typename T>
std::optional<T> percentile_sorted(std::span<const T> sorted, double p) {
  if (sorted.empty()) return std::nullopt;
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

template <typename T>
std::optional<T> percentile(std::vector<T> samples, double p) {
  std::sort(samples.begin(), samples.end());
  return percentile_sorted<T>(samples, p);
}

/// Raw per-BSS accumulators. Everything here is additive across seed
/// replicates, so pooling is exact.
struct BssStats {
  int bss = 0;
  int link_count = 1;
  std::vector<std::int64_t> delays_ns;
  std::vector<std::int32_t> aggregates;  // MPDUs per successful exchange
  Duration measured{};
  Duration active{};
  std::vector<Duration> occupancy;  // active time with n links in TX, n = 0..k
  Duration starved{};
  Duration near_capacity{};  // time with the queue within one aggregate of full
  double in_system_integral = 0.0;  // packet-seconds
  double queue_integral = 0.0;
  std::uint64_t delivered_packets = 0;
  std::uint64_t delivered_bits = 0;
  std::uint64_t queue_drops = 0;
  std::uint64_t retry_drops = 0;
  std::uint64_t exchanges = 0;
  std::uint64_t collisions = 0;

  friend bool operator==(const BssStats&, const BssStats&) = default;
};

struct BssSummary {
  std::optional<double> delay_p50_us;
  std::optional<double> delay_p95_us;
  std::optional<double> delay_p99_us;
  std::optional<double> delay_mean_us;
  double throughput_bps = 0.0;
  std::optional<double> agg_p50;
  std::optional<double> agg_p99;
  /// P(n links in TX | active), n = 0..k; absent if never active.
  std::optional<std::vector<double>> occupancy;
  double starvation_frac = 0.0;
  double mean_in_system = 0.0;
  double mean_queue = 0.0;
  std::uint64_t drops = 0;
  bool saturated = false;

  friend bool operator==(const BssSummary&, const BssSummary&) = default;
};

struct BssReport {
  BssStats stats;
  BssSummary summary;

  /// Any nearest-rank delay percentile, in microseconds.
  [[nodiscard]] std::optional<double> delay_percentile_us(double p) const;

  friend bool operator==(const BssReport&, const BssReport&) = default;
};

[[nodiscard]] BssSummary summarize(const BssStats& stats);

/// Merges replicates of the same BSS: samples are pooled before percentiles.
[[nodiscard]] BssReport pool(std::span<const BssReport> replicates);

/// Releases the sample vectors once summaries have been taken.
void strip_samples(BssReport& report);

struct RunReport {
  std::string scheme;
  double load_bps = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> pooled_seeds;  // non-empty for pooled reports
  double duration_s = 0.0;
  double warmup_s = 0.0;
  std::string config_echo;
  std::uint64_t events = 0;
  std::vector<BssReport> bss;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Instantaneous view of one BSS, valid between two consecutive events.
struct BssSnapshot {
  bool active = false;
  int links_in_tx = 0;
  bool starved = false;
  std::size_t queue_length = 0;
  std::size_t in_system = 0;
};

struct BssSetup {
  int link_count = 1;
  std::size_t saturation_threshold = 0;  // queue length considered "pinned"
};

/// Accumulates per-BSS statistics for one run. Time-weighted quantities are
/// integrated piecewise: advance(t, snapshots) credits the interval since the
/// previous advance with the given snapshots. Nothing before warmup_end is
/// counted.
class Collector {
 public:
  Collector(std::span<const BssSetup> setup, SimTime warmup_end);

  void record_delivery(int bss, SimTime arrival, SimTime completion,
                       std::int64_t size_bytes);
  void record_drop(int bss, SimTime at, std::size_t count, DropCause cause);
  void record_exchange(int bss, SimTime at, std::size_t n_mpdus, TxOutcome outcome);
  void advance(SimTime now, std::span<const BssSnapshot> snapshots);

  [[nodiscard]] SimTime warmup_end() const { return warmup_end_; }
  [[nodiscard]] const BssStats& stats(int bss) const { return stats_.at(static_cast<std::size_t>(bss)); }
  [[nodiscard]] std::vector<BssReport> reports() const;

 private:
  std::vector<BssStats> stats_;
  std::vector<std::size_t> saturation_threshold_;
  SimTime warmup_end_;
  SimTime last_;
};

}  // namespace mlo::metrics
