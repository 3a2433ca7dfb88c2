#include "mlo/mld.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mlo {

bool TxQueue::push(const Packet& p) {
  if (packets_.size() >= capacity_) {
    ++drops_;
    return false;
  }
  packets_.push_back(p);
  return true;
}

std::vector<Packet> TxQueue::pop_front(std::size_t n) {
  n = std::min(n, packets_.size());
  std::vector<Packet> out(packets_.begin(), packets_.begin() + static_cast<std::ptrdiff_t>(n));
  packets_.erase(packets_.begin(), packets_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

const char* to_string(MldMode mode) {
  switch (mode) {
    case MldMode::kSingleLink: return "SL";
    case MldMode::kEmlsr: return "EMLSR";
    case MldMode::kStrEmlmr: return "STR_EMLMR";
    case MldMode::kHybrid: return "HYBRID_1PLUS1";
  }
  return "?";
}

std::optional<MldMode> parse_mode(const std::string& s) {
  for (MldMode m : {MldMode::kSingleLink, MldMode::kEmlsr, MldMode::kStrEmlmr,
                    MldMode::kHybrid}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

void validate(const MldConfig& cfg) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string("mld ") + to_string(cfg.mode) + ": " + why);
  };
  const std::size_t k = cfg.links.size();
  if (k == 0) fail("no links");
  std::set<ChannelId> distinct;
  for (const LinkSpec& l : cfg.links) distinct.insert(l.channel);
  if (distinct.size() != k) fail("links must use distinct channels");
  switch (cfg.mode) {
    case MldMode::kSingleLink:
      if (k != 1) fail("requires exactly 1 link");
      break;
    case MldMode::kEmlsr:
    case MldMode::kStrEmlmr:
      break;
    case MldMode::kHybrid:
      if (k != 2) fail("requires exactly 2 links");
      if (!cfg.links[0].reserved || cfg.links[1].reserved)
        fail("first link must be reserved and second shared");
      break;
  }
  if (cfg.mode != MldMode::kHybrid) {
    for (const LinkSpec& l : cfg.links)
      if (l.reserved) fail("only HYBRID links may be marked reserved");
  }
  if (cfg.max_aggregation < 1) fail("max_aggregation must be >= 1");
  if (cfg.queue_capacity < 1) fail("queue_capacity must be >= 1");
  if (cfg.emlsr_switch_delay < Duration::zero()) fail("negative emlsr_switch_delay");
}

Mld::Mld(Env env, DeviceId bss, MldConfig config, std::uint64_t seed,
         MldObserver* observer)
    : env_(env),
      bss_(bss),
      config_(std::move(config)),
      observer_(observer),
      queue_(static_cast<std::size_t>(config_.queue_capacity)) {
  validate(config_);
  for (std::size_t i = 0; i < config_.links.size(); ++i) {
    links_.push_back(std::make_unique<dcf::Link>(
        env_.kernel, env_.medium, *this, env_.dcf, bss_, static_cast<int>(i),
        config_.links[i].channel,
        RngStream(seed, stream_id(StreamKind::kDcf, static_cast<std::uint64_t>(bss_), i))));
  }
  pending_.resize(links_.size());
}

bool Mld::enqueue(const Packet& p) {
  ++counters_.arrivals;
  if (!queue_.push(p)) {
    ++counters_.queue_drops;
    if (observer_) observer_->on_dropped(bss_, 1, DropCause::kQueueFull);
    return false;
  }
  arm_idle_links();
  return true;
}

void Mld::arm_idle_links() {
  if (emlsr_holder_) return;  // siblings are locked; the holder re-arms itself
  for (auto& l : links_) l->arm();
}

std::optional<Duration> Mld::on_grant(dcf::Link& link) {
  const auto i = static_cast<std::size_t>(link.index());
  if (config_.mode == MldMode::kEmlsr && emlsr_holder_ &&
      *emlsr_holder_ != link.index()) {
    // Unreachable while siblings are locked; counted for the property suite.
    ++counters_.emlsr_lock_violations;
    return std::nullopt;
  }
  if (!pending_[i]) {
    if (queue_.empty()) return std::nullopt;
    const std::int64_t size = queue_.front().size_bytes;
    const std::int64_t limit =
        phy::max_mpdus_within_cap(env_.phy, size, config_.max_aggregation);
    Batch batch;
    batch.packets = queue_.pop_front(static_cast<std::size_t>(limit));
    batch.link = link.index();
    batch.formed_at = env_.kernel.now();
    if (observer_) observer_->on_batch_formed(bss_, batch);
    pending_[i] = std::move(batch);
  }
  if (config_.mode == MldMode::kEmlsr) {
    emlsr_holder_ = link.index();
    for (auto& sibling : links_)
      if (sibling.get() != &link) sibling->lock();
  }
  const Batch& b = *pending_[i];
  return phy::exchange_airtime(env_.phy, env_.ack,
                               static_cast<std::int64_t>(b.packets.size()),
                               b.packets.front().size_bytes);
}

void Mld::on_exchange_end(dcf::Link& link, TxOutcome outcome, bool dropped) {
  const auto i = static_cast<std::size_t>(link.index());
  if (!pending_[i]) throw std::logic_error("mld: exchange ended without a batch");
  const std::size_t n = pending_[i]->packets.size();
  if (observer_) observer_->on_exchange_end(bss_, link.index(), n, outcome);
  if (outcome == TxOutcome::kSuccess) {
    counters_.delivered += n;
    if (observer_) observer_->on_delivered(bss_, pending_[i]->packets, env_.kernel.now());
    pending_[i].reset();
  } else if (dropped) {
    counters_.retry_drops += n;
    if (observer_) observer_->on_dropped(bss_, n, DropCause::kRetryLimit);
    pending_[i].reset();
  }

  if (config_.mode == MldMode::kEmlsr) {
    if (config_.emlsr_switch_delay == Duration::zero()) {
      release_emlsr_lock();
    } else {
      env_.kernel.schedule_in(config_.emlsr_switch_delay, EventKind::kLockRelease,
                              [this] { release_emlsr_lock(); });
    }
  }
  if (pending_[i] || !queue_.empty()) link.arm();
}

void Mld::release_emlsr_lock() {
  if (!emlsr_holder_) return;
  // A later transmission by the holder keeps the siblings locked; its own
  // exchange end schedules the next release.
  if (links_[static_cast<std::size_t>(*emlsr_holder_)]->in_tx()) return;
  emlsr_holder_.reset();
  for (auto& l : links_) l->unlock();
  if (!queue_.empty()) arm_idle_links();
}

std::size_t Mld::in_flight_packets() const {
  std::size_t n = 0;
  for (const auto& b : pending_)
    if (b) n += b->packets.size();
  return n;
}

int Mld::links_in_tx() const {
  return static_cast<int>(std::count_if(links_.begin(), links_.end(),
                                        [](const auto& l) { return l->in_tx(); }));
}

}  // namespace mlo
