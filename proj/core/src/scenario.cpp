#include "mlo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "mlo/traffic.hpp"

namespace mlo {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

template <typename F>
void capture(std::vector<std::string>& problems, const std::string& path, F&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    problems.push_back(path + ": " + e.what());
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::invalid_argument("invalid scenario: " + join(problems)),
      problems_(std::move(problems)) {}

std::vector<std::string> validation_problems(const Scenario& s) {
  std::vector<std::string> problems;
  auto add = [&](std::string p) { problems.push_back(std::move(p)); };

  if (s.channels.empty()) add("channels: no channels defined");
  std::set<ChannelId> channels(s.channels.begin(), s.channels.end());
  if (channels.size() != s.channels.size()) add("channels: duplicate channel id");
  if (s.bss.empty()) add("bss: no BSS defined");
  if (s.packet_size_bytes <= 0) add("traffic.packet_size_bytes: must be > 0");
  if (!(s.duration_s > 0) || !std::isfinite(s.duration_s)) add("sim.duration_s: must be > 0");
  if (!(s.warmup_fraction >= 0 && s.warmup_fraction < 1))
    add("sim.warmup_fraction: must be in [0, 1)");
  if (s.seeds.empty()) add("sim.seeds: at least one seed required");
  if (s.total_load_bps && !(*s.total_load_bps >= 0 && std::isfinite(*s.total_load_bps)))
    add("traffic.total_load_bps: must be finite and >= 0");

  capture(problems, "phy", [&] { phy::validate(s.phy); });
  capture(problems, "ack", [&] { phy::validate(s.ack); });
  capture(problems, "dcf", [&] { dcf::validate(s.dcf); });

  // channel -> BSS indices using it
  std::map<ChannelId, std::set<std::size_t>> users;
  for (std::size_t i = 0; i < s.bss.size(); ++i) {
    const BssConfig& b = s.bss[i];
    const std::string path = "bss[" + std::to_string(i) + "] (" + b.name + ")";
    capture(problems, path, [&] { validate(b.mld); });
    for (std::size_t j = 0; j < b.mld.links.size(); ++j) {
      const ChannelId ch = b.mld.links[j].channel;
      if (!channels.contains(ch)) {
        add(path + ".links[" + std::to_string(j) + "].channel: unknown channel " +
            std::to_string(ch));
      }
      users[ch].insert(i);
    }
    if (!b.load_bps && !s.total_load_bps)
      add(path + ".load_bps: no per-BSS load and no traffic.total_load_bps");
    if (b.load_bps && !(*b.load_bps >= 0 && std::isfinite(*b.load_bps)))
      add(path + ".load_bps: must be finite and >= 0");
  }
  for (std::size_t i = 0; i < s.bss.size(); ++i) {
    for (const LinkSpec& l : s.bss[i].mld.links) {
      if (l.reserved && users[l.channel].size() > 1) {
        add("bss[" + std::to_string(i) + "] (" + s.bss[i].name +
            "): reserved channel " + std::to_string(l.channel) +
            " is also used by another BSS");
      }
    }
  }
  return problems;
}

void validate(const Scenario& s) {
  auto problems = validation_problems(s);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::vector<double> per_bss_loads(const Scenario& s) {
  std::vector<double> loads(s.bss.size(), 0.0);
  const auto unset = static_cast<int>(std::count_if(
      s.bss.begin(), s.bss.end(), [](const BssConfig& b) { return !b.load_bps; }));
  std::vector<double> split;
  if (unset > 0) split = traffic::split_evenly(s.total_load_bps.value_or(0.0), unset);
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.bss.size(); ++i) {
    loads[i] = s.bss[i].load_bps ? *s.bss[i].load_bps : split[k++];
  }
  return loads;
}

namespace {

const char* kBssNames[] = {"A", "B", "C", "D", "E", "F", "G", "H"};

BssConfig make_bss(int index, MldMode mode, std::vector<LinkSpec> links) {
  BssConfig b;
  b.name = kBssNames[index];
  b.mld.mode = mode;
  b.mld.links = std::move(links);
  return b;
}

std::vector<LinkSpec> on_channels(std::initializer_list<ChannelId> ids) {
  std::vector<LinkSpec> out;
  for (ChannelId c : ids) out.push_back(LinkSpec{c, false});
  return out;
}

Scenario base(std::string name, std::vector<ChannelId> channels, double load) {
  Scenario s;
  s.name = std::move(name);
  s.channels = std::move(channels);
  s.total_load_bps = load;
  s.seeds = {1, 2, 3};
  return s;
}

Scenario crowded_sl(double load) {
  Scenario s = base("SL", {1, 2, 3, 4}, load);
  for (int i = 0; i < 4; ++i)
    s.bss.push_back(make_bss(i, MldMode::kSingleLink, on_channels({i + 1})));
  return s;
}

// Two disjoint pairs, each pair sharing two channels.
Scenario crowded_pairs(std::string name, MldMode mode, double load) {
  Scenario s = base(std::move(name), {1, 2, 3, 4}, load);
  s.bss.push_back(make_bss(0, mode, on_channels({1, 2})));
  s.bss.push_back(make_bss(1, mode, on_channels({1, 2})));
  s.bss.push_back(make_bss(2, mode, on_channels({3, 4})));
  s.bss.push_back(make_bss(3, mode, on_channels({3, 4})));
  return s;
}

Scenario crowded_all_shared(std::string name, std::vector<ChannelId> channels,
                            double load) {
  Scenario s = base(std::move(name), channels, load);
  for (int i = 0; i < 4; ++i) {
    std::vector<LinkSpec> links;
    for (ChannelId c : channels) links.push_back(LinkSpec{c, false});
    s.bss.push_back(make_bss(i, MldMode::kStrEmlmr, std::move(links)));
  }
  return s;
}

Scenario crowded_hybrid(double load) {
  Scenario s = base("EMLMR:1+1", {1, 2, 3, 4, 5}, load);
  for (int i = 0; i < 4; ++i) {
    s.bss.push_back(make_bss(i, MldMode::kHybrid,
                             {LinkSpec{i + 1, true}, LinkSpec{5, false}}));
  }
  return s;
}

Scenario isolated(std::string name, MldMode mode, std::vector<ChannelId> channels,
                  double load) {
  Scenario s = base(std::move(name), channels, load);
  std::vector<LinkSpec> links;
  for (ChannelId c : channels) links.push_back(LinkSpec{c, false});
  s.bss.push_back(make_bss(0, mode, std::move(links)));
  return s;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig4", "fig5"}; }

std::vector<Scenario> preset(const std::string& name, double load) {
  if (name == "fig2") {
    return {isolated("SL", MldMode::kSingleLink, {1}, load),
            isolated("EMLMR:2", MldMode::kStrEmlmr, {1, 2}, load),
            isolated("EMLMR:4", MldMode::kStrEmlmr, {1, 2, 3, 4}, load)};
  }
  if (name == "fig4") {
    return {crowded_sl(load), crowded_pairs("EMLMR:2", MldMode::kStrEmlmr, load),
            crowded_all_shared("EMLMR:4", {1, 2, 3, 4}, load)};
  }
  if (name == "fig5") {
    return {crowded_sl(load), crowded_pairs("EMLMR:2", MldMode::kStrEmlmr, load),
            crowded_pairs("EMLSR:2", MldMode::kEmlsr, load), crowded_hybrid(load),
            crowded_all_shared("EMLMR:5", {1, 2, 3, 4, 5}, load)};
  }
  throw std::invalid_argument("unknown preset '" + name + "' (expected fig2, fig4 or fig5)");
}

}  // namespace mlo
