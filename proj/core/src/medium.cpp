#include "mlo/medium.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mlo {

Medium::Medium(Kernel& kernel, std::span<const ChannelId> channel_ids,
               Options options)
    : kernel_(kernel),
      options_(options),
      ids_(channel_ids.begin(), channel_ids.end()),
      channels_(channel_ids.size()) {
  auto sorted = ids_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("medium: duplicate channel id");
}

bool Medium::has_channel(ChannelId ch) const {
  return std::find(ids_.begin(), ids_.end(), ch) != ids_.end();
}

std::size_t Medium::index_of(ChannelId ch) const {
  const auto it = std::find(ids_.begin(), ids_.end(), ch);
  if (it == ids_.end())
    throw std::out_of_range("medium: unknown channel " + std::to_string(ch));
  return static_cast<std::size_t>(it - ids_.begin());
}

void Medium::subscribe(ChannelId ch, ChannelListener* listener) {
  channels_[index_of(ch)].listeners.push_back(listener);
}

TxHandle Medium::begin_tx(ChannelId ch, DeviceId device, Duration duration) {
  Channel& c = channels_[index_of(ch)];
  const SimTime now = kernel_.now();
  const bool was_idle = c.active.empty();
  Active tx{next_tx_id_++, device, now, now + duration, false};
  if (!was_idle && options_.collisions) {
    tx.collided = true;
    for (Active& other : c.active) other.collided = true;
  }
  c.active.push_back(tx);
  if (was_idle) {
    c.busy_since = now;
    ++c.busy_notes;
    for (ChannelListener* l : c.listeners) l->on_channel_busy();
  }
  return TxHandle{ch, device, now, duration, tx.id};
}

TxOutcome Medium::end_tx(const TxHandle& handle) {
  Channel& c = channels_[index_of(handle.channel)];
  const auto it = std::find_if(c.active.begin(), c.active.end(),
                               [&](const Active& a) { return a.id == handle.id; });
  if (it == c.active.end())
    throw std::logic_error("medium: end_tx on unknown transmission");
  if (kernel_.now() != it->end)
    throw std::logic_error("medium: end_tx called off schedule");
  const TxOutcome outcome = it->collided ? TxOutcome::kCollision : TxOutcome::kSuccess;
  if (options_.record_log) {
    log_.push_back(TxRecord{handle.channel, it->device, it->start, it->end, outcome});
  }
  c.active.erase(it);
  if (c.active.empty()) {
    c.busy_total += kernel_.now() - c.busy_since;
    c.idle_since = kernel_.now();
    ++c.idle_notes;
    for (ChannelListener* l : c.listeners) l->on_channel_idle();
  }
  return outcome;
}

bool Medium::is_busy(ChannelId ch) const {
  return !channels_[index_of(ch)].active.empty();
}

bool Medium::busy_with_foreign(ChannelId ch, DeviceId device) const {
  const auto& active = channels_[index_of(ch)].active;
  return std::any_of(active.begin(), active.end(),
                     [&](const Active& a) { return a.device != device; });
}

bool Medium::collided(const TxHandle& handle) const {
  const auto& active = channels_[index_of(handle.channel)].active;
  const auto it = std::find_if(active.begin(), active.end(),
                               [&](const Active& a) { return a.id == handle.id; });
  return it != active.end() && it->collided;
}

Duration Medium::busy_time(ChannelId ch) const {
  const Channel& c = channels_[index_of(ch)];
  Duration total = c.busy_total;
  if (!c.active.empty()) total += kernel_.now() - c.busy_since;
  return total;
}

std::uint64_t Medium::busy_notifications(ChannelId ch) const {
  return channels_[index_of(ch)].busy_notes;
}

SimTime Medium::idle_since(ChannelId ch) const {
  return channels_[index_of(ch)].idle_since;
}

std::uint64_t Medium::idle_notifications(ChannelId ch) const {
  return channels_[index_of(ch)].idle_notes;
}

}  // namespace mlo
