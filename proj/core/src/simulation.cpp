#include "mlo/simulation.hpp"

#include <algorithm>

#include "mlo/config_io.hpp"

namespace mlo {

class Simulation::Recorder final : public MldObserver {
 public:
  Recorder(const Kernel& kernel, metrics::Collector& collector, MldObserver* extra)
      : kernel_(kernel), collector_(collector), extra_(extra) {}

  void on_batch_formed(DeviceId bss, const Batch& batch) override {
    if (extra_) extra_->on_batch_formed(bss, batch);
  }
  void on_delivered(DeviceId bss, std::span<const Packet> packets,
                    SimTime completion) override {
    for (const Packet& p : packets)
      collector_.record_delivery(bss, p.arrival, completion, p.size_bytes);
    if (extra_) extra_->on_delivered(bss, packets, completion);
  }
  void on_dropped(DeviceId bss, std::size_t count, DropCause cause) override {
    collector_.record_drop(bss, kernel_.now(), count, cause);
    if (extra_) extra_->on_dropped(bss, count, cause);
  }
  void on_exchange_end(DeviceId bss, int link, std::size_t n_mpdus,
                       TxOutcome outcome) override {
    collector_.record_exchange(bss, kernel_.now(), n_mpdus, outcome);
    if (extra_) extra_->on_exchange_end(bss, link, n_mpdus, outcome);
  }

 private:
  const Kernel& kernel_;
  metrics::Collector& collector_;
  MldObserver* extra_;
};

Simulation::Simulation(Scenario scenario, std::uint64_t seed, Options options)
    : scenario_(std::move(scenario)), seed_(seed), options_(std::move(options)) {
  validate(scenario_);
  medium_ = std::make_unique<Medium>(
      kernel_, scenario_.channels,
      Medium::Options{scenario_.collisions, options_.record_tx_log});

  const SimTime warmup_end = at(from_seconds(scenario_.duration_s * scenario_.warmup_fraction));
  std::vector<metrics::BssSetup> setup;
  for (const BssConfig& b : scenario_.bss) {
    const auto cap = static_cast<std::size_t>(b.mld.queue_capacity);
    const auto agg = static_cast<std::size_t>(b.mld.max_aggregation);
    setup.push_back({static_cast<int>(b.mld.links.size()), cap - std::min(agg, cap / 2)});
  }
  collector_ = std::make_unique<metrics::Collector>(setup, warmup_end);
  recorder_ = std::make_unique<Recorder>(kernel_, *collector_, options_.extra_observer);

  const Mld::Env env{kernel_, *medium_, scenario_.dcf, scenario_.phy, scenario_.ack};
  const std::vector<double> loads = per_bss_loads(scenario_);
  for (std::size_t i = 0; i < scenario_.bss.size(); ++i) {
    const auto id = static_cast<DeviceId>(i);
    mlds_.push_back(std::make_unique<Mld>(env, id, scenario_.bss[i].mld, seed_, recorder_.get()));
    Mld* mld = mlds_.back().get();
    sources_.push_back(std::make_unique<traffic::PoissonSource>(
        kernel_, id, loads[i], scenario_.packet_size_bytes,
        RngStream(seed_, stream_id(StreamKind::kTraffic, i)),
        [mld](const Packet& p) { mld->enqueue(p); }));
  }
  snapshots_.resize(mlds_.size());
  kernel_.set_advance_hook([this](SimTime now) { on_advance(now); });
}

Simulation::~Simulation() = default;

void Simulation::on_advance(SimTime now) {
  for (std::size_t i = 0; i < mlds_.size(); ++i) {
    const Mld& m = *mlds_[i];
    metrics::BssSnapshot& snap = snapshots_[i];
    snap.queue_length = m.queue().size();
    snap.in_system = snap.queue_length + m.in_flight_packets();
    snap.active = snap.in_system > 0;
    snap.links_in_tx = m.links_in_tx();
    snap.starved = snap.active;
    for (std::size_t l = 0; l < m.link_count() && snap.starved; ++l) {
      snap.starved = medium_->busy_with_foreign(m.link(l).channel(), m.bss());
    }
  }
  collector_->advance(now, snapshots_);
  if (options_.probe) options_.probe(*this);
}

void Simulation::run() {
  if (ran_) throw std::logic_error("Simulation::run called twice");
  ran_ = true;
  for (auto& src : sources_) src->start(kTimeZero);
  kernel_.run_until(at(from_seconds(scenario_.duration_s)));
}

metrics::RunReport Simulation::report() const {
  metrics::RunReport r;
  r.scheme = scenario_.name;
  for (double l : per_bss_loads(scenario_)) r.load_bps += l;
  r.seed = seed_;
  r.duration_s = scenario_.duration_s;
  r.warmup_s = scenario_.duration_s * scenario_.warmup_fraction;
  Scenario echo = scenario_;
  echo.seeds = {seed_};
  r.config_echo = to_yaml(echo);
  r.events = kernel_.processed_count();
  r.bss = collector_->reports();
  return r;
}

metrics::RunReport run(const Scenario& scenario, std::uint64_t seed) {
  Simulation sim(scenario, seed);
  sim.run();
  return sim.report();
}

}  // namespace mlo
