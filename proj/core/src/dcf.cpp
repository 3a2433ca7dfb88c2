#include "mlo/dcf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mlo::dcf {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void validate(const DcfParams& p) {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("dcf: invalid ") + what);
  };
  if (p.slot <= Duration::zero()) fail("slot");
  if (p.sifs < Duration::zero()) fail("sifs");
  if (p.difs < p.sifs) fail("difs (must be >= sifs)");
  if (!is_power_of_two(p.cw_min)) fail("cw_min (must be a power of two)");
  if (!is_power_of_two(p.cw_max)) fail("cw_max (must be a power of two)");
  if (p.cw_min > p.cw_max) fail("cw_min (must be <= cw_max)");
  if (p.retry_limit < 0) fail("retry_limit");
}

std::int64_t contention_window(const DcfParams& p, std::int64_t retry_stage) {
  std::int64_t cw = p.cw_min;
  for (std::int64_t i = 0; i < retry_stage && cw < p.cw_max; ++i) cw *= 2;
  return std::min(cw, p.cw_max);
}

const char* to_string(LinkStateKind kind) {
  switch (kind) {
    case LinkStateKind::kIdle: return "IDLE";
    case LinkStateKind::kDifsWait: return "DIFS_WAIT";
    case LinkStateKind::kBackoff: return "BACKOFF";
    case LinkStateKind::kFrozen: return "FROZEN";
    case LinkStateKind::kTx: return "TX";
    case LinkStateKind::kEmlsrLocked: return "EMLSR_LOCKED";
  }
  return "?";
}

Link::Link(Kernel& kernel, Medium& medium, LinkOwner& owner,
           const DcfParams& params, DeviceId device, int index,
           ChannelId channel, RngStream rng)
    : kernel_(kernel),
      medium_(medium),
      owner_(owner),
      params_(params),
      device_(device),
      index_(index),
      channel_(channel),
      rng_(std::move(rng)) {
  medium_.subscribe(channel_, this);
}

void Link::arm() {
  if (state_ != State::kIdle) return;
  drawn_ = static_cast<std::int64_t>(
      rng_.uniform_below(static_cast<std::uint64_t>(current_cw())));
  remaining_ = drawn_;
  counted_ = 0;
  has_backoff_ = true;
  ++counters_.backoffs_drawn;
  counters_.slots_drawn += static_cast<std::uint64_t>(drawn_);
  if (medium_.is_busy(channel_)) {
    state_ = State::kFrozen;
  } else {
    start_contention();
  }
}

void Link::start_contention() {
  state_ = State::kContending;
  countdown_start_ = kernel_.now() + params_.difs;
  expiry_at_ = countdown_start_ + remaining_ * params_.slot;
  expiry_ = kernel_.schedule(expiry_at_, EventKind::kBackoffExpiry,
                             [this] { on_expiry(); });
}

void Link::stop_contention() {
  kernel_.cancel(expiry_);
  const SimTime now = kernel_.now();
  if (now > countdown_start_) {
    // Only slots idle for their entire duration count.
    const std::int64_t done =
        std::min<std::int64_t>((now - countdown_start_) / params_.slot, remaining_);
    remaining_ -= done;
    counted_ += done;
    counters_.slots_counted += static_cast<std::uint64_t>(done);
  }
}

void Link::on_channel_busy() {
  if (state_ != State::kContending) return;
  // Counter reaches zero at this instant: transmit anyway (collision path).
  if (kernel_.now() == expiry_at_) return;
  stop_contention();
  state_ = State::kFrozen;
}

void Link::on_channel_idle() {
  if (state_ == State::kFrozen) start_contention();
}

void Link::lock() {
  if (state_ == State::kTx)
    throw std::logic_error("dcf: lock() on a transmitting link");
  if (state_ == State::kContending) stop_contention();
  state_ = State::kLocked;
}

void Link::unlock() {
  if (state_ != State::kLocked) return;
  if (!has_backoff_) {
    state_ = State::kIdle;
  } else if (medium_.is_busy(channel_)) {
    state_ = State::kFrozen;
  } else {
    start_contention();
  }
}

void Link::on_expiry() {
  counted_ += remaining_;
  counters_.slots_counted += static_cast<std::uint64_t>(remaining_);
  remaining_ = 0;
  has_backoff_ = false;
  ++counters_.backoffs_completed;
  state_ = State::kIdle;

  const std::optional<Duration> hold = owner_.on_grant(*this);
  if (!hold) {
    ++counters_.declines;
    return;
  }
  state_ = State::kTx;
  ++counters_.attempts;
  tx_ = medium_.begin_tx(channel_, device_, *hold);
  kernel_.schedule(tx_.end(), EventKind::kTxEnd, [this] { on_tx_end(); });
}

void Link::on_tx_end() {
  const TxOutcome outcome = medium_.end_tx(tx_);
  bool dropped = false;
  if (outcome == TxOutcome::kSuccess) {
    retry_stage_ = 0;
  } else {
    ++counters_.collisions;
    if (++retry_stage_ > params_.retry_limit) {
      dropped = true;
      ++counters_.retry_drops;
      retry_stage_ = 0;
    }
  }
  state_ = State::kIdle;
  owner_.on_exchange_end(*this, outcome, dropped);
}

LinkStateKind Link::state() const {
  switch (state_) {
    case State::kIdle: return LinkStateKind::kIdle;
    case State::kContending:
      return kernel_.now() < countdown_start_ ? LinkStateKind::kDifsWait
                                              : LinkStateKind::kBackoff;
    case State::kFrozen: return LinkStateKind::kFrozen;
    case State::kTx: return LinkStateKind::kTx;
    case State::kLocked: return LinkStateKind::kEmlsrLocked;
  }
  return LinkStateKind::kIdle;
}

std::int64_t Link::backoff_remaining() const {
  if (state_ != State::kContending) return remaining_;
  const SimTime now = kernel_.now();
  if (now <= countdown_start_) return remaining_;
  return remaining_ -
         std::min<std::int64_t>((now - countdown_start_) / params_.slot, remaining_);
}

}  // namespace mlo::dcf
