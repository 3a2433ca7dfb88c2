#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlo/dcf.hpp"
#include "mlo/kernel.hpp"
#include "mlo/medium.hpp"
#include "mlo/phy.hpp"

namespace mlo {

struct Packet {
  std::uint64_t id = 0;
  DeviceId bss = 0;
  SimTime arrival;
  std::int64_t size_bytes = 12000;
};

/// Bounded FIFO; arrivals beyond capacity are dropped and counted.
class TxQueue {
 public:
  explicit TxQueue(std::size_t capacity) : capacity_(capacity) {}

  bool push(const Packet& p);
  /// Removes and returns up to n packets from the head.
  std::vector<Packet> pop_front(std::size_t n);

  [[nodiscard]] std::size_t size() const { return packets_.size(); }
  [[nodiscard]] bool empty() const { return packets_.empty(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] std::uint64_t drops() const { return drops_; }
  [[nodiscard]] const Packet& front() const { return packets_.front(); }

 private:
  std::size_t capacity_;
  std::deque<Packet> packets_;
  std::uint64_t drops_ = 0;
};

enum class MldMode : std::uint8_t {
  kSingleLink,
  kEmlsr,
  kStrEmlmr,
  kHybrid,  // STR over one reserved plus one shared channel
};

const char* to_string(MldMode mode);
std::optional<MldMode> parse_mode(const std::string& s);

struct LinkSpec {
  ChannelId channel = 0;
  bool reserved = false;

  friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

struct MldConfig {
  MldMode mode = MldMode::kSingleLink;
  std::vector<LinkSpec> links;
  std::int64_t max_aggregation = 1024;
  std::int64_t queue_capacity = 4096;
  Duration emlsr_switch_delay{};

  friend bool operator==(const MldConfig&, const MldConfig&) = default;
};

/// Throws std::invalid_argument describing the violated mode constraint.
void validate(const MldConfig& cfg);

struct Batch {
  std::vector<Packet> packets;
  int link = 0;
  SimTime formed_at;
};

enum class DropCause : std::uint8_t { kQueueFull, kRetryLimit };

/// Receives packet-level outcomes from an MLD. All hooks default to no-ops.
class MldObserver {
 public:
  virtual ~MldObserver() = default;
  virtual void on_batch_formed(DeviceId /*bss*/, const Batch& /*batch*/) {}
  virtual void on_delivered(DeviceId /*bss*/, std::span<const Packet> /*packets*/,
                            SimTime /*completion*/) {}
  virtual void on_dropped(DeviceId /*bss*/, std::size_t /*count*/,
                          DropCause /*cause*/) {}
  virtual void on_exchange_end(DeviceId /*bss*/, int /*link*/,
                               std::size_t /*n_mpdus*/, TxOutcome /*outcome*/) {}
};

struct MldCounters {
  std::uint64_t arrivals = 0;
  std::uint64_t delivered = 0;
  std::uint64_t queue_drops = 0;
  std::uint64_t retry_drops = 0;
  std::uint64_t emlsr_lock_violations = 0;
};

/// A multi-link AP: one shared FIFO feeding every link, with mode-specific
/// arbitration. SL, STR EMLMR and HYBRID let every link transmit
/// independently; EMLSR allows one transmitting link at a time and holds the
/// others locked (backoff frozen) until the exchange plus the switch delay
/// has elapsed.
class Mld final : public dcf::LinkOwner {
 public:
  struct Env {
    Kernel& kernel;
    Medium& medium;
    const dcf::DcfParams& dcf;
    const phy::PhyConfig& phy;
    const phy::AckParams& ack;
  };

  Mld(Env env, DeviceId bss, MldConfig config, std::uint64_t seed,
      MldObserver* observer = nullptr);

  Mld(const Mld&) = delete;
  Mld& operator=(const Mld&) = delete;

  /// Returns false when the queue was full and the packet was dropped.
  bool enqueue(const Packet& p);

  std::optional<Duration> on_grant(dcf::Link& link) override;
  void on_exchange_end(dcf::Link& link, TxOutcome outcome, bool dropped) override;

  [[nodiscard]] DeviceId bss() const { return bss_; }
  [[nodiscard]] const MldConfig& config() const { return config_; }
  [[nodiscard]] std::size_t link_count() const { return links_.size(); }
  [[nodiscard]] const dcf::Link& link(std::size_t i) const { return *links_[i]; }
  [[nodiscard]] dcf::Link& link(std::size_t i) { return *links_[i]; }

  [[nodiscard]] const TxQueue& queue() const { return queue_; }
  [[nodiscard]] std::size_t in_flight_packets() const;
  [[nodiscard]] int links_in_tx() const;
  /// Has undelivered packets, queued or in flight.
  [[nodiscard]] bool active() const { return !queue_.empty() || in_flight_packets() > 0; }
  [[nodiscard]] bool emlsr_locked() const { return emlsr_holder_.has_value(); }
  [[nodiscard]] const MldCounters& counters() const { return counters_; }

 private:
  void arm_idle_links();
  void release_emlsr_lock();

  Env env_;
  DeviceId bss_;
  MldConfig config_;
  MldObserver* observer_;
  TxQueue queue_;
  std::vector<std::unique_ptr<dcf::Link>> links_;
  std::vector<std::optional<Batch>> pending_;  // per link: in TX or awaiting retry
  std::optional<int> emlsr_holder_;  // set from grant until lock release
  MldCounters counters_;
};

}  // namespace mlo
