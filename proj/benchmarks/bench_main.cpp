#include <benchmark/benchmark.h>

#include "mlo/kernel.hpp"
#include "mlo/phy.hpp"
#include "mlo/rng.hpp"
#include "mlo/simulation.hpp"

namespace {

// Schedule-and-dispatch throughput with a steady population of pending events.
void BM_KernelChurn(benchmark::State& state) {
  const auto population = state.range(0);
  for (auto _ : state) {
    mlo::Kernel k;
    mlo::RngStream rng(1, 1);
    std::int64_t remaining = 200'000;
    std::function<void()> tick = [&] {
      if (--remaining <= 0) return;
      k.schedule_in(mlo::Duration(1 + static_cast<std::int64_t>(rng.uniform_below(100000))),
                    mlo::EventKind::kGeneric, tick);
    };
    for (std::int64_t i = 0; i < population; ++i)
      k.schedule_in(mlo::Duration(i), mlo::EventKind::kGeneric, tick);
    k.run_until(mlo::at(std::chrono::seconds(1000)));
    benchmark::DoNotOptimize(k.processed_count());
    state.counters["events"] = benchmark::Counter(static_cast<double>(k.processed_count()),
                                                  benchmark::Counter::kIsIterationInvariantRate);
  }
}
BENCHMARK(BM_KernelChurn)->Arg(16)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_KernelCancel(benchmark::State& state) {
  for (auto _ : state) {
    mlo::Kernel k;
    std::vector<mlo::EventHandle> hs;
    hs.reserve(100000);
    for (int i = 0; i < 100000; ++i)
      hs.push_back(k.schedule(mlo::at(mlo::Duration(i)), mlo::EventKind::kGeneric, [] {}));
    for (std::size_t i = 0; i < hs.size(); i += 2) k.cancel(hs[i]);
    k.run_until(mlo::at(std::chrono::seconds(1)));
    benchmark::DoNotOptimize(k.processed_count());
  }
}
BENCHMARK(BM_KernelCancel)->Unit(benchmark::kMillisecond);

void BM_ExchangeAirtime(benchmark::State& state) {
  const mlo::phy::PhyConfig phy;
  const mlo::phy::AckParams ack;
  std::int64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlo::phy::exchange_airtime(phy, ack, n, 12000));
    n = n % 1024 + 1;
  }
}
BENCHMARK(BM_ExchangeAirtime);

void BM_MaxMpdusWithinCap(benchmark::State& state) {
  mlo::phy::PhyConfig phy;
  phy.max_ppdu_duration = std::chrono::microseconds(5484);
  for (auto _ : state) benchmark::DoNotOptimize(mlo::phy::max_mpdus_within_cap(phy, 12000, 1024));
}
BENCHMARK(BM_MaxMpdusWithinCap);

// One simulated second of a preset scheme; reports simulated events per second.
void BM_SimulateOneSecond(benchmark::State& state) {
  const char* presets[] = {"fig2", "fig4", "fig5"};
  const auto schemes = mlo::preset(presets[state.range(0)], state.range(2) * 1e8);
  mlo::Scenario s = schemes.at(static_cast<std::size_t>(state.range(1)));
  s.duration_s = 1.0;
  state.SetLabel(std::string(presets[state.range(0)]) + " " + s.name);
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto r = mlo::run(s, 1);
    events += r.events;
  }
  state.counters["events/s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateOneSecond)
    ->Args({0, 0, 5})
    ->Args({0, 2, 5})
    ->Args({1, 2, 25})
    ->Args({2, 2, 25})
    ->Args({2, 4, 25})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
