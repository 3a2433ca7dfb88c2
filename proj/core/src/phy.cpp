#include "mlo/phy.hpp"

#include <stdexcept>
#include <string>

namespace mlo::phy {

namespace {

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("phy: invalid ") + field);
}

}  // namespace

void validate(const PhyConfig& cfg) {
  require(cfg.channel_width_mhz > 0, "channel_width_mhz");
  require(cfg.spatial_streams > 0, "spatial_streams");
  require(cfg.bits_per_subcarrier_per_symbol > 0,
          "bits_per_subcarrier_per_symbol");
  require(cfg.data_subcarriers > 0, "data_subcarriers");
  require(cfg.symbol_duration > Duration::zero(), "symbol_duration");
  require(cfg.preamble_duration > Duration::zero(), "preamble_duration");
  require(cfg.per_mpdu_overhead_bytes >= 0, "per_mpdu_overhead_bytes");
  require(!cfg.max_ppdu_duration || *cfg.max_ppdu_duration > cfg.preamble_duration,
          "max_ppdu_duration");
}

void validate(const AckParams& ack) {
  require(ack.sifs >= Duration::zero(), "sifs");
  require(ack.block_ack_duration >= Duration::zero(), "block_ack_duration");
}

std::int64_t bits_per_symbol(const PhyConfig& cfg) {
  return cfg.data_subcarriers * cfg.bits_per_subcarrier_per_symbol *
         cfg.spatial_streams;
}

double data_rate(const PhyConfig& cfg) {
  return static_cast<double>(bits_per_symbol(cfg)) / to_seconds(cfg.symbol_duration);
}

Duration ppdu_airtime(const PhyConfig& cfg, std::int64_t n_mpdus,
                      std::int64_t mpdu_payload_bytes) {
  if (n_mpdus < 1) throw std::invalid_argument("ppdu_airtime: empty PPDU");
  if (mpdu_payload_bytes <= 0)
    throw std::invalid_argument("ppdu_airtime: non-positive payload");
  const std::int64_t bits =
      n_mpdus * (mpdu_payload_bytes + cfg.per_mpdu_overhead_bytes) * 8;
  const std::int64_t per_symbol = bits_per_symbol(cfg);
  const std::int64_t symbols = (bits + per_symbol - 1) / per_symbol;
  return cfg.preamble_duration + symbols * cfg.symbol_duration;
}

Duration exchange_airtime(const PhyConfig& cfg, const AckParams& ack,
                          std::int64_t n_mpdus, std::int64_t mpdu_payload_bytes) {
  return ppdu_airtime(cfg, n_mpdus, mpdu_payload_bytes) + ack.sifs +
         ack.block_ack_duration;
}

std::int64_t max_mpdus_within_cap(const PhyConfig& cfg,
                                  std::int64_t mpdu_payload_bytes,
                                  std::int64_t limit) {
  if (!cfg.max_ppdu_duration) return limit;
  const Duration cap = *cfg.max_ppdu_duration;
  // ppdu_airtime is monotone in n, so binary search the largest fit.
  std::int64_t lo = 1;
  std::int64_t hi = limit;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (ppdu_airtime(cfg, mid, mpdu_payload_bytes) <= cap) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace mlo::phy
