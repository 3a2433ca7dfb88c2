#include "mlo/config_io.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace mlo {

namespace {

void check_keys(const YAML::Node& node, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(path + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) throw ConfigError(path + "." + key + ": unknown key");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": invalid value");
  }
}

template <typename T>
void read(const YAML::Node& parent, const std::string& path, const char* key, T& out) {
  if (const YAML::Node n = parent[key]) out = scalar<T>(n, path + "." + key);
}

void read_ns(const YAML::Node& parent, const std::string& path, const char* key,
             Duration& out) {
  if (const YAML::Node n = parent[key]) {
    out = Duration{scalar<std::int64_t>(n, path + "." + key)};
  }
}

void read_phy(const YAML::Node& n, phy::PhyConfig& phy) {
  const std::string p = "phy";
  check_keys(n, p,
             {"channel_width_mhz", "spatial_streams", "bits_per_subcarrier_per_symbol",
              "data_subcarriers", "symbol_duration_ns", "preamble_duration_ns",
              "per_mpdu_overhead_bytes", "max_ppdu_duration_ns"});
  read(n, p, "channel_width_mhz", phy.channel_width_mhz);
  read(n, p, "spatial_streams", phy.spatial_streams);
  read(n, p, "bits_per_subcarrier_per_symbol", phy.bits_per_subcarrier_per_symbol);
  read(n, p, "data_subcarriers", phy.data_subcarriers);
  read_ns(n, p, "symbol_duration_ns", phy.symbol_duration);
  read_ns(n, p, "preamble_duration_ns", phy.preamble_duration);
  read(n, p, "per_mpdu_overhead_bytes", phy.per_mpdu_overhead_bytes);
  if (const YAML::Node cap = n["max_ppdu_duration_ns"]) {
    if (cap.IsNull()) {
      phy.max_ppdu_duration.reset();
    } else {
      phy.max_ppdu_duration = Duration{scalar<std::int64_t>(cap, p + ".max_ppdu_duration_ns")};
    }
  }
}

void read_ack(const YAML::Node& n, phy::AckParams& ack) {
  check_keys(n, "ack", {"sifs_ns", "block_ack_duration_ns"});
  read_ns(n, "ack", "sifs_ns", ack.sifs);
  read_ns(n, "ack", "block_ack_duration_ns", ack.block_ack_duration);
}

void read_dcf(const YAML::Node& n, dcf::DcfParams& d) {
  const std::string p = "dcf";
  check_keys(n, p, {"slot_ns", "sifs_ns", "difs_ns", "cw_min", "cw_max", "retry_limit"});
  read_ns(n, p, "slot_ns", d.slot);
  read_ns(n, p, "sifs_ns", d.sifs);
  read_ns(n, p, "difs_ns", d.difs);
  read(n, p, "cw_min", d.cw_min);
  read(n, p, "cw_max", d.cw_max);
  read(n, p, "retry_limit", d.retry_limit);
}

BssConfig read_bss(const YAML::Node& n, const std::string& p) {
  check_keys(n, p,
             {"name", "mode", "links", "max_aggregation", "queue_capacity",
              "emlsr_switch_delay_ns", "load_bps"});
  BssConfig b;
  read(n, p, "name", b.name);
  if (const YAML::Node m = n["mode"]) {
    const auto text = scalar<std::string>(m, p + ".mode");
    const auto mode = parse_mode(text);
    if (!mode) {
      throw ConfigError(p + ".mode: unknown mode '" + text +
                        "' (expected SL, EMLSR, STR_EMLMR or HYBRID_1PLUS1)");
    }
    b.mld.mode = *mode;
  }
  if (const YAML::Node links = n["links"]) {
    if (!links.IsSequence()) throw ConfigError(p + ".links: expected a list");
    for (std::size_t j = 0; j < links.size(); ++j) {
      const std::string lp = p + ".links[" + std::to_string(j) + "]";
      check_keys(links[j], lp, {"channel", "reserved"});
      LinkSpec l;
      if (!links[j]["channel"]) throw ConfigError(lp + ".channel: required");
      read(links[j], lp, "channel", l.channel);
      read(links[j], lp, "reserved", l.reserved);
      b.mld.links.push_back(l);
    }
  }
  read(n, p, "max_aggregation", b.mld.max_aggregation);
  read(n, p, "queue_capacity", b.mld.queue_capacity);
  read_ns(n, p, "emlsr_switch_delay_ns", b.mld.emlsr_switch_delay);
  if (const YAML::Node l = n["load_bps"]; l && !l.IsNull())
    b.load_bps = scalar<double>(l, p + ".load_bps");
  return b;
}

Scenario read_scenario(const YAML::Node& root) {
  check_keys(root, "scenario",
             {"name", "channels", "traffic", "sim", "phy", "ack", "dcf", "bss"});
  Scenario s;
  read(root, "scenario", "name", s.name);
  if (const YAML::Node ch = root["channels"]) {
    s.channels = scalar<std::vector<ChannelId>>(ch, "channels");
  }
  if (const YAML::Node t = root["traffic"]) {
    check_keys(t, "traffic", {"total_load_bps", "packet_size_bytes"});
    if (const YAML::Node l = t["total_load_bps"]; l && !l.IsNull())
      s.total_load_bps = scalar<double>(l, "traffic.total_load_bps");
    read(t, "traffic", "packet_size_bytes", s.packet_size_bytes);
  }
  if (const YAML::Node sim = root["sim"]) {
    check_keys(sim, "sim", {"duration_s", "warmup_fraction", "seeds", "collisions"});
    read(sim, "sim", "duration_s", s.duration_s);
    read(sim, "sim", "warmup_fraction", s.warmup_fraction);
    read(sim, "sim", "collisions", s.collisions);
    if (const YAML::Node seeds = sim["seeds"])
      s.seeds = scalar<std::vector<std::uint64_t>>(seeds, "sim.seeds");
  }
  if (const YAML::Node n = root["phy"]) read_phy(n, s.phy);
  if (const YAML::Node n = root["ack"]) read_ack(n, s.ack);
  if (const YAML::Node n = root["dcf"]) read_dcf(n, s.dcf);
  if (const YAML::Node list = root["bss"]) {
    if (!list.IsSequence()) throw ConfigError("bss: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i)
      s.bss.push_back(read_bss(list[i], "bss[" + std::to_string(i) + "]"));
  }
  return s;
}

YAML::Node parse(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML syntax error: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Scenario scenario_from_yaml(const std::string& text) { return read_scenario(parse(text)); }

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_yaml(slurp(path));
}

// Shortest text that parses back to the same double.
std::string shortest(double v) { return fmt::format("{}", v); }

std::string to_yaml(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.name;
  out << YAML::Key << "channels" << YAML::Value << YAML::Flow << s.channels;

  out << YAML::Key << "traffic" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "total_load_bps" << YAML::Value;
  if (s.total_load_bps) {
    out << shortest(*s.total_load_bps);
  } else {
    out << YAML::Null;
  }
  out << YAML::Key << "packet_size_bytes" << YAML::Value << s.packet_size_bytes;
  out << YAML::EndMap;

  out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "duration_s" << YAML::Value << shortest(s.duration_s);
  out << YAML::Key << "warmup_fraction" << YAML::Value << shortest(s.warmup_fraction);
  out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << s.seeds;
  out << YAML::Key << "collisions" << YAML::Value << s.collisions;
  out << YAML::EndMap;

  out << YAML::Key << "phy" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "channel_width_mhz" << YAML::Value << s.phy.channel_width_mhz;
  out << YAML::Key << "spatial_streams" << YAML::Value << s.phy.spatial_streams;
  out << YAML::Key << "bits_per_subcarrier_per_symbol" << YAML::Value
      << s.phy.bits_per_subcarrier_per_symbol;
  out << YAML::Key << "data_subcarriers" << YAML::Value << s.phy.data_subcarriers;
  out << YAML::Key << "symbol_duration_ns" << YAML::Value << s.phy.symbol_duration.count();
  out << YAML::Key << "preamble_duration_ns" << YAML::Value << s.phy.preamble_duration.count();
  out << YAML::Key << "per_mpdu_overhead_bytes" << YAML::Value << s.phy.per_mpdu_overhead_bytes;
  out << YAML::Key << "max_ppdu_duration_ns" << YAML::Value;
  if (s.phy.max_ppdu_duration) {
    out << s.phy.max_ppdu_duration->count();
  } else {
    out << YAML::Null;
  }
  out << YAML::EndMap;

  out << YAML::Key << "ack" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "sifs_ns" << YAML::Value << s.ack.sifs.count();
  out << YAML::Key << "block_ack_duration_ns" << YAML::Value << s.ack.block_ack_duration.count();
  out << YAML::EndMap;

  out << YAML::Key << "dcf" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "slot_ns" << YAML::Value << s.dcf.slot.count();
  out << YAML::Key << "sifs_ns" << YAML::Value << s.dcf.sifs.count();
  out << YAML::Key << "difs_ns" << YAML::Value << s.dcf.difs.count();
  out << YAML::Key << "cw_min" << YAML::Value << s.dcf.cw_min;
  out << YAML::Key << "cw_max" << YAML::Value << s.dcf.cw_max;
  out << YAML::Key << "retry_limit" << YAML::Value << s.dcf.retry_limit;
  out << YAML::EndMap;

  out << YAML::Key << "bss" << YAML::Value << YAML::BeginSeq;
  for (const BssConfig& b : s.bss) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << b.name;
    out << YAML::Key << "mode" << YAML::Value << to_string(b.mld.mode);
    out << YAML::Key << "links" << YAML::Value << YAML::BeginSeq;
    for (const LinkSpec& l : b.mld.links) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "channel" << YAML::Value << l.channel;
      out << YAML::Key << "reserved" << YAML::Value << l.reserved;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "max_aggregation" << YAML::Value << b.mld.max_aggregation;
    out << YAML::Key << "queue_capacity" << YAML::Value << b.mld.queue_capacity;
    out << YAML::Key << "emlsr_switch_delay_ns" << YAML::Value
        << b.mld.emlsr_switch_delay.count();
    out << YAML::Key << "load_bps" << YAML::Value;
    if (b.load_bps) {
      out << shortest(*b.load_bps);
    } else {
      out << YAML::Null;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

SweepSpec sweep_from_yaml(const std::string& text, const std::filesystem::path& base_dir) {
  const YAML::Node root = parse(text);
  check_keys(root, "sweep",
             {"preset", "scenarios", "loads_bps", "seeds", "duration_s", "warmup_fraction"});
  SweepSpec spec;
  spec.loads_bps = default_load_grid_bps();
  spec.seeds = {1, 2, 3};
  read(root, "sweep", "loads_bps", spec.loads_bps);
  read(root, "sweep", "seeds", spec.seeds);

  const bool has_preset = static_cast<bool>(root["preset"]);
  const bool has_files = static_cast<bool>(root["scenarios"]);
  if (has_preset == has_files)
    throw ConfigError("sweep: exactly one of 'preset' or 'scenarios' is required");
  if (has_preset) {
    const auto name = scalar<std::string>(root["preset"], "sweep.preset");
    try {
      spec.schemes = preset(name, 0.0);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("sweep.preset: ") + e.what());
    }
  } else {
    const auto files = scalar<std::vector<std::string>>(root["scenarios"], "sweep.scenarios");
    for (const auto& f : files) spec.schemes.push_back(load_scenario(base_dir / f));
  }
  for (Scenario& s : spec.schemes) {
    read(root, "sweep", "duration_s", s.duration_s);
    read(root, "sweep", "warmup_fraction", s.warmup_fraction);
  }
  if (spec.loads_bps.empty()) throw ConfigError("sweep.loads_bps: empty");
  if (spec.seeds.empty()) throw ConfigError("sweep.seeds: empty");
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  return sweep_from_yaml(slurp(path), path.parent_path());
}

}  // namespace mlo
