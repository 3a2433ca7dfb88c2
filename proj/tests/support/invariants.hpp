#pragma once

// Run-time invariant checks shared by the property suite and the acceptance
// binary. Each checker collects human-readable failures instead of asserting.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlo/simulation.hpp"

namespace invariants {

using mlo::dcf::LinkStateKind;

struct Failures {
  std::vector<std::string> items;
  std::uint64_t total = 0;
  void add(std::string what) {
    ++total;
    if (items.size() < 10) items.push_back(std::move(what));
  }
  [[nodiscard]] bool ok() const { return total == 0; }
};

// Records every batch so its contents can be replayed against the counters.
struct BatchLog : mlo::MldObserver {
  std::map<int, std::vector<std::vector<std::uint64_t>>> batches;  // bss -> packet ids
  std::map<int, std::uint64_t> delivered, retry_dropped;
  void on_batch_formed(mlo::DeviceId bss, const mlo::Batch& b) override {
    std::vector<std::uint64_t> ids;
    ids.reserve(b.packets.size());
    for (const auto& p : b.packets) ids.push_back(p.id);
    batches[bss].push_back(std::move(ids));
  }
  void on_delivered(mlo::DeviceId bss, std::span<const mlo::Packet> ps, mlo::SimTime) override {
    delivered[bss] += ps.size();
  }
  void on_dropped(mlo::DeviceId bss, std::size_t n, mlo::DropCause cause) override {
    if (cause == mlo::DropCause::kRetryLimit) retry_dropped[bss] += n;
  }
};

// Called before every event: mode limits on concurrent transmissions, slot
// accounting, and that a frozen or locked backoff counter never moves.
struct StateWatcher {
  Failures failures;
  std::uint64_t checks = 0;
  std::uint64_t frozen_observations = 0;
  std::map<const mlo::dcf::Link*, std::int64_t> frozen_at;

  void operator()(const mlo::Simulation& sim) {
    ++checks;
    for (std::size_t b = 0; b < sim.bss_count(); ++b) {
      const mlo::Mld& m = sim.mld(b);
      const auto mode = m.config().mode;
      if ((mode == mlo::MldMode::kEmlsr || mode == mlo::MldMode::kSingleLink) &&
          m.links_in_tx() > 1)
        failures.add("bss " + std::to_string(b) + ": " + std::to_string(m.links_in_tx()) +
                     " links in TX under " + mlo::to_string(mode));
      for (std::size_t i = 0; i < m.link_count(); ++i) check_link(m.link(i), b, i);
    }
  }

 private:
  void check_link(const mlo::dcf::Link& l, std::size_t b, std::size_t i) {
    const auto st = l.state();
    const auto& c = l.counters();
    const std::string where = "bss " + std::to_string(b) + " link " + std::to_string(i);
    if (st != LinkStateKind::kDifsWait && st != LinkStateKind::kBackoff) {
      const std::uint64_t pending =
          l.has_pending_backoff() ? static_cast<std::uint64_t>(l.backoff_remaining()) : 0;
      if (c.slots_drawn != c.slots_counted + pending) failures.add(where + ": slots lost");
    }
    if (l.backoff_remaining() < 0 || l.backoff_remaining() >= l.current_cw())
      failures.add(where + ": backoff outside [0, CW)");
    const bool frozen = l.has_pending_backoff() &&
                        (st == LinkStateKind::kFrozen || st == LinkStateKind::kEmlsrLocked);
    const auto it = frozen_at.find(&l);
    if (frozen) {
      ++frozen_observations;
      if (it != frozen_at.end() && it->second != l.backoff_remaining())
        failures.add(where + ": frozen backoff changed");
      frozen_at[&l] = l.backoff_remaining();
    } else if (it != frozen_at.end()) {
      frozen_at.erase(it);
    }
  }
};

// Every generated packet is delivered, dropped, queued or on air; batches
// drain each FIFO in arrival order with no packet sent in two batches.
inline void check_conservation(const mlo::Simulation& sim, const BatchLog& log,
                               Failures& out) {
  for (std::size_t b = 0; b < sim.bss_count(); ++b) {
    const auto& m = sim.mld(b);
    const auto& c = m.counters();
    const auto bss = static_cast<int>(b);
    const std::string where = "bss " + std::to_string(b);
    if (sim.source(b).generated() != c.arrivals) out.add(where + ": arrivals != generated");
    if (c.arrivals != c.delivered + c.queue_drops + c.retry_drops + m.queue().size() +
                          m.in_flight_packets())
      out.add(where + ": packets not conserved");
    if (c.emlsr_lock_violations != 0) out.add(where + ": EMLSR lock violated");

    std::uint64_t formed = 0;
    std::int64_t last = -1;
    const auto it = log.batches.find(bss);
    if (it != log.batches.end()) {
      for (const auto& ids : it->second) {
        if (ids.empty() || ids.size() > 1024) out.add(where + ": batch size out of range");
        for (auto id : ids) {
          if (static_cast<std::int64_t>(id) <= last) out.add(where + ": FIFO order broken");
          last = static_cast<std::int64_t>(id);
        }
        formed += ids.size();
      }
    }
    const auto get = [](const std::map<int, std::uint64_t>& m, int k) {
      const auto f = m.find(k);
      return f == m.end() ? std::uint64_t{0} : f->second;
    };
    if (formed != get(log.delivered, bss) + get(log.retry_dropped, bss) + m.in_flight_packets())
      out.add(where + ": batch replay does not match deliveries");
    if (get(log.delivered, bss) != c.delivered) out.add(where + ": delivery count mismatch");
    if (formed + c.queue_drops + m.queue().size() > c.arrivals)
      out.add(where + ": more packets sent than arrived");
  }
}

// Transmissions on one channel may overlap only if they started together,
// and then all of them failed.
inline void check_no_overlap(const mlo::Medium& medium, Failures& out) {
  std::map<mlo::ChannelId, std::vector<mlo::TxRecord>> by_channel;
  for (const auto& r : medium.log()) by_channel[r.channel].push_back(r);
  for (auto& [ch, recs] : by_channel) {
    std::sort(recs.begin(), recs.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    mlo::SimTime reach = mlo::kTimeZero;
    std::size_t reach_idx = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (i > 0 && recs[i].start < reach) {
        const auto& a = recs[reach_idx];
        const auto& b = recs[i];
        if (a.start != b.start || a.outcome != mlo::TxOutcome::kCollision ||
            b.outcome != mlo::TxOutcome::kCollision)
          out.add("channel " + std::to_string(ch) + ": overlapping transmissions");
      }
      if (recs[i].end > reach) {
        reach = recs[i].end;
        reach_idx = i;
      }
    }
  }
}

// L = lambda * W for one BSS; returns lambda * W / L.
inline double littles_ratio(const mlo::metrics::BssReport& b) {
  const double measured = mlo::to_seconds(b.stats.measured);
  const double lambda = static_cast<double>(b.stats.delivered_packets) / measured;
  const double w = b.summary.delay_mean_us.value_or(0.0) * 1e-6;
  return lambda * w / b.summary.mean_in_system;
}

}  // namespace invariants
