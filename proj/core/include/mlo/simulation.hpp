#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mlo/kernel.hpp"
#include "mlo/medium.hpp"
#include "mlo/metrics.hpp"
#include "mlo/mld.hpp"
#include "mlo/scenario.hpp"
#include "mlo/traffic.hpp"

namespace mlo {

/// One independent run of a scenario with one seed. Owns every piece of
/// mutable state, so distinct instances may run on distinct threads.
class Simulation {
 public:
  struct Options {
    bool record_tx_log = false;
    /// Called with the simulation before each event dispatch (i.e. after the
    /// previous event's effects) and once at the end of the run.
    std::function<void(const Simulation&)> probe;
    /// Receives every batch formed and every exchange end, for replay tests.
    MldObserver* extra_observer = nullptr;
  };

  Simulation(Scenario scenario, std::uint64_t seed, Options options);
  Simulation(Scenario scenario, std::uint64_t seed)
      : Simulation(std::move(scenario), seed, Options{}) {}
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the configured duration. Call once.
  void run();
  [[nodiscard]] metrics::RunReport report() const;

  [[nodiscard]] const Scenario& scenario() const { return scenario_; }
  [[nodiscard]] const Kernel& kernel() const { return kernel_; }
  [[nodiscard]] const Medium& medium() const { return *medium_; }
  [[nodiscard]] std::size_t bss_count() const { return mlds_.size(); }
  [[nodiscard]] const Mld& mld(std::size_t i) const { return *mlds_[i]; }
  [[nodiscard]] const traffic::PoissonSource& source(std::size_t i) const { return *sources_[i]; }
  [[nodiscard]] const metrics::Collector& collector() const { return *collector_; }

 private:
  class Recorder;
  void on_advance(SimTime now);

  Scenario scenario_;
  std::uint64_t seed_;
  Options options_;
  Kernel kernel_;
  std::unique_ptr<Medium> medium_;
  std::unique_ptr<metrics::Collector> collector_;
  std::unique_ptr<Recorder> recorder_;
  std::vector<std::unique_ptr<Mld>> mlds_;
  std::vector<std::unique_ptr<traffic::PoissonSource>> sources_;
  std::vector<metrics::BssSnapshot> snapshots_;
  bool ran_ = false;
};

/// Validates, runs and reports. Deterministic in (scenario, seed).
[[nodiscard]] metrics::RunReport run(const Scenario& scenario, std::uint64_t seed);

}  // namespace mlo
