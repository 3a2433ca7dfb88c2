#include "mlo/metrics.hpp"

#include <numeric>
#include <stdexcept>

namespace mlo::metrics {

namespace {

std::optional<double> to_us(std::optional<std::int64_t> ns) {
  if (!ns) return std::nullopt;
  return static_cast<double>(*ns) / 1000.0;
}

std::optional<double> to_double(std::optional<std::int32_t> v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

}  // namespace

BssSummary summarize(const BssStats& s) {
  BssSummary out;
  std::vector<std::int64_t> delays = s.delays_ns;
  std::sort(delays.begin(), delays.end());
  const std::span<const std::int64_t> d(delays);
  out.delay_p50_us = to_us(percentile_sorted(d, 50));
  out.delay_p95_us = to_us(percentile_sorted(d, 95));
  out.delay_p99_us = to_us(percentile_sorted(d, 99));
  if (!delays.empty()) {
    // Sum in long double: 1e6 samples of ~1e7 ns stay exact well within range.
    const long double sum =
        std::accumulate(delays.begin(), delays.end(), static_cast<long double>(0));
    out.delay_mean_us =
        static_cast<double>(sum / static_cast<long double>(delays.size()) / 1000.0L);
  }

  std::vector<std::int32_t> aggs = s.aggregates;
  std::sort(aggs.begin(), aggs.end());
  const std::span<const std::int32_t> a(aggs);
  out.agg_p50 = to_double(percentile_sorted(a, 50));
  out.agg_p99 = to_double(percentile_sorted(a, 99));

  const double measured = to_seconds(s.measured);
  if (measured > 0) {
    out.throughput_bps = static_cast<double>(s.delivered_bits) / measured;
    out.mean_in_system = s.in_system_integral / measured;
    out.mean_queue = s.queue_integral / measured;
    out.saturated = to_seconds(s.near_capacity) / measured >= 0.5;
  }
  if (s.active > Duration::zero()) {
    const double active = to_seconds(s.active);
    std::vector<double> occ;
    occ.reserve(s.occupancy.size());
    for (Duration t : s.occupancy) occ.push_back(to_seconds(t) / active);
    out.occupancy = std::move(occ);
    out.starvation_frac = to_seconds(s.starved) / active;
  }
  out.drops = s.queue_drops + s.retry_drops;
  return out;
}

std::optional<double> BssReport::delay_percentile_us(double p) const {
  return to_us(percentile(stats.delays_ns, p));
}

BssReport pool(std::span<const BssReport> replicates) {
  if (replicates.empty()) throw std::invalid_argument("pool: no replicates");
  BssStats merged;
  merged.bss = replicates.front().stats.bss;
  merged.link_count = replicates.front().stats.link_count;
  merged.occupancy.assign(static_cast<std::size_t>(merged.link_count) + 1, Duration::zero());
  for (const BssReport& r : replicates) {
    const BssStats& s = r.stats;
    if (s.bss != merged.bss || s.link_count != merged.link_count)
      throw std::invalid_argument("pool: replicates describe different BSSs");
    merged.delays_ns.insert(merged.delays_ns.end(), s.delays_ns.begin(), s.delays_ns.end());
    merged.aggregates.insert(merged.aggregates.end(), s.aggregates.begin(), s.aggregates.end());
    merged.measured += s.measured;
    merged.active += s.active;
    for (std::size_t n = 0; n < s.occupancy.size(); ++n) merged.occupancy[n] += s.occupancy[n];
    merged.starved += s.starved;
    merged.near_capacity += s.near_capacity;
    merged.in_system_integral += s.in_system_integral;
    merged.queue_integral += s.queue_integral;
    merged.delivered_packets += s.delivered_packets;
    merged.delivered_bits += s.delivered_bits;
    merged.queue_drops += s.queue_drops;
    merged.retry_drops += s.retry_drops;
    merged.exchanges += s.exchanges;
    merged.collisions += s.collisions;
  }
  BssReport out;
  out.summary = summarize(merged);
  out.stats = std::move(merged);
  return out;
}

void strip_samples(BssReport& report) {
  report.stats.delays_ns = {};
  report.stats.aggregates = {};
}

Collector::Collector(std::span<const BssSetup> setup, SimTime warmup_end)
    : warmup_end_(warmup_end), last_(kTimeZero) {
  for (std::size_t i = 0; i < setup.size(); ++i) {
    BssStats s;
    s.bss = static_cast<int>(i);
    s.link_count = setup[i].link_count;
    s.occupancy.assign(static_cast<std::size_t>(setup[i].link_count) + 1, Duration::zero());
    stats_.push_back(std::move(s));
    saturation_threshold_.push_back(setup[i].saturation_threshold);
  }
}

void Collector::record_delivery(int bss, SimTime arrival, SimTime completion,
                                std::int64_t size_bytes) {
  if (completion < arrival) throw std::logic_error("metrics: negative packet delay");
  if (completion < warmup_end_) return;
  BssStats& s = stats_.at(static_cast<std::size_t>(bss));
  s.delays_ns.push_back((completion - arrival).count());
  ++s.delivered_packets;
  s.delivered_bits += static_cast<std::uint64_t>(size_bytes) * 8;
}

void Collector::record_drop(int bss, SimTime at, std::size_t count, DropCause cause) {
  if (at < warmup_end_) return;
  BssStats& s = stats_.at(static_cast<std::size_t>(bss));
  if (cause == DropCause::kQueueFull) {
    s.queue_drops += count;
  } else {
    s.retry_drops += count;
  }
}

void Collector::record_exchange(int bss, SimTime at, std::size_t n_mpdus,
                                TxOutcome outcome) {
  if (at < warmup_end_) return;
  BssStats& s = stats_.at(static_cast<std::size_t>(bss));
  ++s.exchanges;
  if (outcome == TxOutcome::kSuccess) {
    s.aggregates.push_back(static_cast<std::int32_t>(n_mpdus));
  } else {
    ++s.collisions;
  }
}

void Collector::advance(SimTime now, std::span<const BssSnapshot> snapshots) {
  if (now < last_) throw std::logic_error("metrics: time went backwards");
  const SimTime from = std::max(last_, warmup_end_);
  last_ = now;
  if (now <= from) return;
  const Duration dt = now - from;
  const double dt_s = to_seconds(dt);
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    BssStats& s = stats_[i];
    const BssSnapshot& snap = snapshots[i];
    s.measured += dt;
    s.in_system_integral += static_cast<double>(snap.in_system) * dt_s;
    s.queue_integral += static_cast<double>(snap.queue_length) * dt_s;
    if (snap.queue_length >= saturation_threshold_[i]) s.near_capacity += dt;
    if (!snap.active) continue;
    s.active += dt;
    s.occupancy.at(static_cast<std::size_t>(snap.links_in_tx)) += dt;
    if (snap.starved) s.starved += dt;
  }
}

std::vector<BssReport> Collector::reports() const {
  std::vector<BssReport> out;
  out.reserve(stats_.size());
  for (const BssStats& s : stats_) out.push_back(BssReport{s, summarize(s)});
  return out;
}

}  // namespace mlo::metrics
