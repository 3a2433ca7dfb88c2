#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mlo/time.hpp"

namespace mlo {

enum class EventKind : std::uint8_t {
  kArrival,
  kBackoffExpiry,
  kTxEnd,
  kLockRelease,
  kGeneric,
};

std::string_view to_string(EventKind kind);

struct EventHandle {
  std::uint64_t seq = 0;  // 0 never refers to a scheduled event

  [[nodiscard]] bool valid() const { return seq != 0; }
  friend bool operator==(EventHandle, EventHandle) = default;
};

/// Single-threaded discrete-event engine. Events fire in (fire_at, seq) order
/// where seq is the insertion counter, so simultaneous events dispatch in the
/// order they were scheduled.
class Kernel {
 public:
  using Action = std::function<void()>;
  /// Invoked with the fire time of each event just before the clock advances
  /// to it, and once more with t_end at the end of run_until.
  using AdvanceHook = std::function<void(SimTime)>;

  [[nodiscard]] SimTime now() const { return now_; }

  /// Throws std::logic_error if fire_at < now().
  EventHandle schedule(SimTime fire_at, EventKind kind, Action action);
  EventHandle schedule_in(Duration delay, EventKind kind, Action action) {
    return schedule(now_ + delay, kind, std::move(action));
  }

  /// True iff the event was still pending. Idempotent.
  bool cancel(EventHandle handle);
  [[nodiscard]] bool is_pending(EventHandle handle) const {
    return live_.contains(handle.seq);
  }

  /// Dispatches every event with fire_at <= t_end, including events scheduled
  /// during dispatch, then sets the clock to t_end. Returns the number of
  /// events dispatched by this call.
  std::uint64_t run_until(SimTime t_end);

  void set_advance_hook(AdvanceHook hook) { advance_hook_ = std::move(hook); }

  [[nodiscard]] std::uint64_t scheduled_count() const { return next_seq_ - 1; }
  [[nodiscard]] std::uint64_t cancelled_count() const { return cancelled_; }
  [[nodiscard]] std::uint64_t processed_count() const { return processed_; }
  [[nodiscard]] std::uint64_t pending_count() const { return live_.size(); }

 private:
  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    EventKind kind;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.fire_at != b.fire_at ? a.fire_at > b.fire_at : a.seq > b.seq;
    }
  };

  SimTime now_ = kTimeZero;
  std::uint64_t next_seq_ = 1;
  std::uint64_t cancelled_ = 0;
  std::uint64_t processed_ = 0;
  std::vector<Entry> heap_;
  std::unordered_set<std::uint64_t> live_;
  AdvanceHook advance_hook_;
};

}  // namespace mlo
