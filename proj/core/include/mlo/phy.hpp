#pragma once

#include <cstdint>
#include <optional>

#include "mlo/time.hpp"

namespace mlo::phy {

using namespace std::chrono_literals;

/// OFDM PHY parameters shared by every device in a scenario. Defaults give
/// an 80 MHz, 2 spatial stream, 256-QAM 3/4 link with 0.8 us guard interval.
struct PhyConfig {
  std::int64_t channel_width_mhz = 80;
  std::int64_t spatial_streams = 2;
  std::int64_t bits_per_subcarrier_per_symbol = 6;
  std::int64_t data_subcarriers = 980;
  Duration symbol_duration = 13600ns;
  Duration preamble_duration = 40000ns;
  std::int64_t per_mpdu_overhead_bytes = 0;
  /// Upper bound on PPDU duration; unset means unlimited.
  std::optional<Duration> max_ppdu_duration;

  friend bool operator==(const PhyConfig&, const PhyConfig&) = default;
};

struct AckParams {
  Duration sifs = 16000ns;
  Duration block_ack_duration = 28000ns;

  friend bool operator==(const AckParams&, const AckParams&) = default;
};

/// Throws std::invalid_argument naming the first offending field.
void validate(const PhyConfig& cfg);
void validate(const AckParams& ack);

[[nodiscard]] std::int64_t bits_per_symbol(const PhyConfig& cfg);

/// Payload bits per second.
[[nodiscard]] double data_rate(const PhyConfig& cfg);

/// Preamble plus symbol-granular payload duration. Throws
/// std::invalid_argument for n_mpdus == 0 or a non-positive payload.
[[nodiscard]] Duration ppdu_airtime(const PhyConfig& cfg, std::int64_t n_mpdus,
                                    std::int64_t mpdu_payload_bytes);

/// Full channel-holding time: PPDU, SIFS and BlockAck.
[[nodiscard]] Duration exchange_airtime(const PhyConfig& cfg,
                                        const AckParams& ack,
                                        std::int64_t n_mpdus,
                                        std::int64_t mpdu_payload_bytes);

/// Largest aggregate whose PPDU fits within cfg.max_ppdu_duration (at least
/// 1), or `limit` when no cap is configured.
[[nodiscard]] std::int64_t max_mpdus_within_cap(const PhyConfig& cfg,
                                                std::int64_t mpdu_payload_bytes,
                                                std::int64_t limit);

}  // namespace mlo::phy
