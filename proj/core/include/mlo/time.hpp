#pragma once

#include <chrono>
#include <cstdint>

namespace mlo {

/// Simulated clock. Never tied to wall time; exists only to give SimTime a
/// distinct type from other nanosecond time points.
struct SimClock {
  using rep = std::int64_t;
  using period = std::nano;
  using duration = std::chrono::duration<rep, period>;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using SimTime = SimClock::time_point;

inline constexpr SimTime kTimeZero{};

constexpr SimTime at(Duration since_start) { return SimTime{since_start}; }

constexpr double to_seconds(Duration d) {
  return std::chrono::duration<double>(d).count();
}
constexpr double to_micros(Duration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}
constexpr Duration from_seconds(double s) {
  return std::chrono::round<Duration>(std::chrono::duration<double>(s));
}

}  // namespace mlo
