#pragma once

#include <cstdint>
#include <optional>

#include "mlo/kernel.hpp"
#include "mlo/medium.hpp"
#include "mlo/rng.hpp"
#include "mlo/time.hpp"

namespace mlo::dcf {

using namespace std::chrono_literals;

struct DcfParams {
  Duration slot = 9000ns;
  Duration sifs = 16000ns;
  Duration difs = 34000ns;
  std::int64_t cw_min = 16;
  std::int64_t cw_max = 1024;
  std::int64_t retry_limit = 7;

  friend bool operator==(const DcfParams&, const DcfParams&) = default;
};

void validate(const DcfParams& params);

/// CW for a retry stage: cw_min doubled per stage, capped at cw_max.
[[nodiscard]] std::int64_t contention_window(const DcfParams& params,
                                             std::int64_t retry_stage);

enum class LinkStateKind : std::uint8_t {
  kIdle,
  kDifsWait,
  kBackoff,
  kFrozen,
  kTx,
  kEmlsrLocked,
};

const char* to_string(LinkStateKind kind);

class Link;

/// The device that owns a link decides what to send when contention is won
/// and what to do once an exchange finishes.
class LinkOwner {
 public:
  virtual ~LinkOwner() = default;
  /// Backoff expired. Return the channel-holding time of the exchange to
  /// start, or nullopt to decline (the link goes idle).
  virtual std::optional<Duration> on_grant(Link& link) = 0;
  /// The exchange ended. The link is idle again; `dropped` is set when the
  /// retry limit was exceeded by this collision.
  virtual void on_exchange_end(Link& link, TxOutcome outcome, bool dropped) = 0;
};

struct LinkCounters {
  std::uint64_t backoffs_drawn = 0;
  std::uint64_t backoffs_completed = 0;
  std::uint64_t slots_drawn = 0;
  std::uint64_t slots_counted = 0;
  std::uint64_t attempts = 0;
  std::uint64_t collisions = 0;
  std::uint64_t retry_drops = 0;
  std::uint64_t declines = 0;
};

/// DCF contention state for one (device, channel) pair.
///
/// DIFS and the slotted backoff are tracked as one pending expiry event; a
/// busy notification cancels it and keeps only the slots that were idle for
/// their full duration. A busy notification arriving at the very instant the
/// counter reaches zero does not stop the transmission, which is how
/// simultaneous expiries collide.
class Link final : public ChannelListener {
 public:
  Link(Kernel& kernel, Medium& medium, LinkOwner& owner, const DcfParams& params,
       DeviceId device, int index, ChannelId channel, RngStream rng);

  Link(const Link&) = delete;
  Link& operator=(const Link&) = delete;

  /// Starts contention if idle; ignored in any other state.
  void arm();
  /// Freezes contention for the duration of a sibling's EMLSR transmission.
  void lock();
  void unlock();

  void on_channel_busy() override;
  void on_channel_idle() override;

  [[nodiscard]] LinkStateKind state() const;
  /// Backoff slots still to count, as of now.
  [[nodiscard]] std::int64_t backoff_remaining() const;
  [[nodiscard]] bool has_pending_backoff() const { return has_backoff_; }
  [[nodiscard]] std::int64_t retry_stage() const { return retry_stage_; }
  [[nodiscard]] std::int64_t current_cw() const {
    return contention_window(params_, retry_stage_);
  }
  [[nodiscard]] bool in_tx() const { return state_ == State::kTx; }
  [[nodiscard]] DeviceId device() const { return device_; }
  [[nodiscard]] int index() const { return index_; }
  [[nodiscard]] ChannelId channel() const { return channel_; }
  [[nodiscard]] const LinkCounters& counters() const { return counters_; }

 private:
  enum class State : std::uint8_t { kIdle, kContending, kFrozen, kTx, kLocked };

  void start_contention();
  void stop_contention();
  void on_expiry();
  void on_tx_end();

  Kernel& kernel_;
  Medium& medium_;
  LinkOwner& owner_;
  const DcfParams& params_;
  DeviceId device_;
  int index_;
  ChannelId channel_;
  RngStream rng_;

  State state_ = State::kIdle;
  bool has_backoff_ = false;
  std::int64_t remaining_ = 0;
  std::int64_t drawn_ = 0;
  std::int64_t counted_ = 0;
  std::int64_t retry_stage_ = 0;
  SimTime countdown_start_;
  SimTime expiry_at_;
  EventHandle expiry_;
  TxHandle tx_;
  LinkCounters counters_;
};

}  // namespace mlo::dcf
