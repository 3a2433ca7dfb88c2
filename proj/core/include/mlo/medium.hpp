#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlo/kernel.hpp"
#include "mlo/time.hpp"

namespace mlo {

using ChannelId = int;
using DeviceId = int;

enum class TxOutcome : std::uint8_t { kSuccess, kCollision };

class ChannelListener {
 public:
  virtual ~ChannelListener() = default;
  virtual void on_channel_busy() = 0;
  virtual void on_channel_idle() = 0;
};

struct TxHandle {
  ChannelId channel = 0;
  DeviceId device = 0;
  SimTime start;
  Duration duration{};
  std::uint64_t id = 0;

  [[nodiscard]] SimTime end() const { return start + duration; }
};

struct TxRecord {
  ChannelId channel;
  DeviceId device;
  SimTime start;
  SimTime end;
  TxOutcome outcome;
};

/// A set of orthogonal channels, each a broadcast medium with perfect carrier
/// sense and zero propagation delay among all devices. Transmissions that
/// overlap on a channel (in practice: start at the same instant) all fail.
class Medium {
 public:
  struct Options {
    bool collisions = true;
    bool record_log = false;
  };

  Medium(Kernel& kernel, std::span<const ChannelId> channel_ids, Options options);
  Medium(Kernel& kernel, std::span<const ChannelId> channel_ids)
      : Medium(kernel, channel_ids, Options{}) {}

  Medium(const Medium&) = delete;
  Medium& operator=(const Medium&) = delete;

  [[nodiscard]] bool has_channel(ChannelId ch) const;
  [[nodiscard]] std::span<const ChannelId> channel_ids() const { return ids_; }

  /// Listeners are notified in subscription order on every idle->busy and
  /// busy->idle transition of the channel.
  void subscribe(ChannelId ch, ChannelListener* listener);

  TxHandle begin_tx(ChannelId ch, DeviceId device, Duration duration);
  /// Must be called exactly at handle.end().
  TxOutcome end_tx(const TxHandle& handle);

  [[nodiscard]] bool is_busy(ChannelId ch) const;
  /// True iff some device other than `device` is transmitting on ch.
  [[nodiscard]] bool busy_with_foreign(ChannelId ch, DeviceId device) const;
  [[nodiscard]] bool collided(const TxHandle& handle) const;
  /// Instant of the last busy->idle transition (time zero if never busy).
  [[nodiscard]] SimTime idle_since(ChannelId ch) const;

  /// Accumulated busy time up to now (union of transmission intervals).
  [[nodiscard]] Duration busy_time(ChannelId ch) const;
  [[nodiscard]] std::uint64_t busy_notifications(ChannelId ch) const;
  [[nodiscard]] std::uint64_t idle_notifications(ChannelId ch) const;

  [[nodiscard]] const std::vector<TxRecord>& log() const { return log_; }

 private:
  struct Active {
    std::uint64_t id;
    DeviceId device;
    SimTime start;
    SimTime end;
    bool collided;
  };
  struct Channel {
    std::vector<Active> active;
    std::vector<ChannelListener*> listeners;
    SimTime busy_since;
    SimTime idle_since;
    Duration busy_total{};
    std::uint64_t busy_notes = 0;
    std::uint64_t idle_notes = 0;
  };

  [[nodiscard]] std::size_t index_of(ChannelId ch) const;

  Kernel& kernel_;
  Options options_;
  std::vector<ChannelId> ids_;
  std::vector<Channel> channels_;
  std::uint64_t next_tx_id_ = 1;
  std::vector<TxRecord> log_;
};

}  // namespace mlo
