#include "mlo/kernel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mlo {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kArrival: return "arrival";
    case EventKind::kBackoffExpiry: return "backoff-expiry";
    case EventKind::kTxEnd: return "tx-end";
    case EventKind::kLockRelease: return "lock-release";
    case EventKind::kGeneric: return "generic";
  }
  return "unknown";
}

EventHandle Kernel::schedule(SimTime fire_at, EventKind kind, Action action) {
  if (fire_at < now_) {
    throw std::logic_error("schedule: " + std::string(to_string(kind)) +
                           " event at " +
                           std::to_string(fire_at.time_since_epoch().count()) +
                           " ns is before now = " +
                           std::to_string(now_.time_since_epoch().count()) +
                           " ns");
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push_back(Entry{fire_at, seq, kind, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  live_.insert(seq);
  return EventHandle{seq};
}

bool Kernel::cancel(EventHandle handle) {
  if (live_.erase(handle.seq) == 0) return false;
  ++cancelled_;
  return true;
}

std::uint64_t Kernel::run_until(SimTime t_end) {
  if (t_end < now_) throw std::logic_error("run_until: t_end is in the past");
  std::uint64_t dispatched = 0;
  while (!heap_.empty() && heap_.front().fire_at <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    if (live_.erase(entry.seq) == 0) continue;  // cancelled
    if (advance_hook_) advance_hook_(entry.fire_at);
    now_ = entry.fire_at;
    ++processed_;
    ++dispatched;
    entry.action();
  }
  if (advance_hook_) advance_hook_(t_end);
  now_ = t_end;
  return dispatched;
}

}  // namespace mlo
