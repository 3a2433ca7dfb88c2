#include "mlo/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace mlo::traffic {

double packet_rate(double load_bps, std::int64_t packet_size_bytes) {
  return load_bps / (static_cast<double>(packet_size_bytes) * 8.0);
}

std::vector<double> split_evenly(double total_load_bps, int n_bss) {
  if (n_bss < 1) throw std::invalid_argument("split_evenly: n_bss must be >= 1");
  return std::vector<double>(static_cast<std::size_t>(n_bss),
                             total_load_bps / static_cast<double>(n_bss));
}

PoissonSource::PoissonSource(Kernel& kernel, DeviceId bss, double load_bps,
                             std::int64_t packet_size_bytes, RngStream rng, Sink sink)
    : kernel_(kernel),
      bss_(bss),
      rate_(packet_rate(load_bps, packet_size_bytes)),
      packet_size_(packet_size_bytes),
      rng_(std::move(rng)),
      sink_(std::move(sink)) {
  if (!(load_bps >= 0.0) || !std::isfinite(load_bps))
    throw std::invalid_argument("PoissonSource: load must be finite and >= 0");
  if (packet_size_bytes <= 0)
    throw std::invalid_argument("PoissonSource: packet size must be > 0");
}

Duration PoissonSource::draw_gap() {
  return from_seconds(rng_.exponential(1.0 / rate_));
}

void PoissonSource::start(SimTime t0) {
  if (rate_ <= 0.0) return;
  kernel_.schedule(t0 + draw_gap(), EventKind::kArrival, [this] { on_arrival(); });
}

void PoissonSource::on_arrival() {
  Packet p;
  p.id = generated_++;
  p.bss = bss_;
  p.arrival = kernel_.now();
  p.size_bytes = packet_size_;
  // Draw the next gap first so the arrival process is independent of MAC state.
  kernel_.schedule(kernel_.now() + draw_gap(), EventKind::kArrival,
                   [this] { on_arrival(); });
  sink_(p);
}

}  // namespace mlo::traffic
