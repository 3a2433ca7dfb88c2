#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mlo/kernel.hpp"
#include "mlo/mld.hpp"
#include "mlo/rng.hpp"

namespace mlo::traffic {

/// Downlink Poisson source with fixed-size packets.
class PoissonSource {
 public:
  using Sink = std::function<void(const Packet&)>;

  PoissonSource(Kernel& kernel, DeviceId bss, double load_bps,
                std::int64_t packet_size_bytes, RngStream rng, Sink sink);

  PoissonSource(const PoissonSource&) = delete;
  PoissonSource& operator=(const PoissonSource&) = delete;

  /// Schedules the first arrival after t0; each arrival schedules the next.
  /// A zero load never generates arrivals.
  void start(SimTime t0);

  [[nodiscard]] double packets_per_second() const { return rate_; }
  [[nodiscard]] std::uint64_t generated() const { return generated_; }

  /// Next inter-arrival gap, rounded to the nanosecond clock.
  Duration draw_gap();

 private:
  void on_arrival();

  Kernel& kernel_;
  DeviceId bss_;
  double rate_;
  std::int64_t packet_size_;
  RngStream rng_;
  Sink sink_;
  std::uint64_t generated_ = 0;
};

[[nodiscard]] double packet_rate(double load_bps, std::int64_t packet_size_bytes);

/// Even split of a total load across n_bss BSSs. Throws for n_bss < 1.
[[nodiscard]] std::vector<double> split_evenly(double total_load_bps, int n_bss);

}  // namespace mlo::traffic
