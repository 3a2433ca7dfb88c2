#include "mlo/export.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <optional>

#include "json.hpp"

namespace mlo {

namespace {

using Cell = std::optional<std::string>;  // nullopt: absent value

std::size_t max_links(std::span<const metrics::RunReport> reports) {
  std::size_t k = 1;
  for (const auto& r : reports)
    for (const auto& b : r.bss) k = std::max(k, static_cast<std::size_t>(b.stats.link_count));
  return k;
}

std::string num(double v) { return fmt::format("{}", v); }

Cell opt(const std::optional<double>& v) {
  if (!v) return std::nullopt;
  return num(*v);
}

std::string seed_text(const metrics::RunReport& r) {
  return r.pooled_seeds.empty() ? std::to_string(r.seed) : std::string("pooled");
}

// Values aligned with export_columns().
std::vector<Cell> row(const metrics::RunReport& r, const metrics::BssReport& b,
                      std::size_t k_max) {
  const metrics::BssSummary& s = b.summary;
  std::vector<Cell> cells{r.scheme,
                          std::to_string(b.stats.bss),
                          num(r.load_bps),
                          seed_text(r),
                          opt(s.delay_p50_us),
                          opt(s.delay_p95_us),
                          opt(s.delay_p99_us),
                          opt(s.delay_mean_us),
                          num(s.throughput_bps),
                          opt(s.agg_p50),
                          opt(s.agg_p99)};
  for (std::size_t n = 0; n <= k_max; ++n) {
    if (s.occupancy && n < s.occupancy->size()) {
      cells.emplace_back(num((*s.occupancy)[n]));
    } else {
      cells.emplace_back(std::nullopt);
    }
  }
  cells.emplace_back(num(s.starvation_frac));
  cells.emplace_back(std::to_string(s.drops));
  cells.emplace_back(s.saturated ? "true" : "false");
  return cells;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> export_columns(std::span<const metrics::RunReport> reports) {
  std::vector<std::string> cols{"scheme",       "bss",          "load_bps",
                                "seed",         "delay_p50_us", "delay_p95_us",
                                "delay_p99_us", "delay_mean_us", "throughput_bps",
                                "agg_p50",      "agg_p99"};
  const std::size_t k = max_links(reports);
  for (std::size_t n = 0; n <= k; ++n) cols.push_back("occ_" + std::to_string(n));
  cols.insert(cols.end(), {"starvation_frac", "drops", "saturated"});
  return cols;
}

void write_csv(std::ostream& out, std::span<const metrics::RunReport> reports) {
  const auto cols = export_columns(reports);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  const std::size_t k = max_links(reports);
  for (const auto& r : reports) {
    for (const auto& b : r.bss) {
      const auto cells = row(r, b, k);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        if (cells[i]) out << csv_escape(*cells[i]);
      }
      out << '\n';
    }
  }
}

std::string to_json(std::span<const metrics::RunReport> reports, bool include_config) {
  using nlohmann::json;
  auto opt_json = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json arr = json::array();
  for (const auto& r : reports) {
    for (const auto& b : r.bss) {
      const metrics::BssSummary& s = b.summary;
      json o;
      o["scheme"] = r.scheme;
      o["bss"] = b.stats.bss;
      o["load_bps"] = r.load_bps;
      if (r.pooled_seeds.empty()) {
        o["seed"] = r.seed;
      } else {
        o["seed"] = "pooled";
        o["pooled_seeds"] = r.pooled_seeds;
      }
      o["delay_p50_us"] = opt_json(s.delay_p50_us);
      o["delay_p95_us"] = opt_json(s.delay_p95_us);
      o["delay_p99_us"] = opt_json(s.delay_p99_us);
      o["delay_mean_us"] = opt_json(s.delay_mean_us);
      o["throughput_bps"] = s.throughput_bps;
      o["agg_p50"] = opt_json(s.agg_p50);
      o["agg_p99"] = opt_json(s.agg_p99);
      for (int n = 0; n <= b.stats.link_count; ++n) {
        o["occ_" + std::to_string(n)] =
            s.occupancy ? json((*s.occupancy)[static_cast<std::size_t>(n)]) : json(nullptr);
      }
      o["starvation_frac"] = s.starvation_frac;
      o["drops"] = s.drops;
      o["saturated"] = s.saturated;
      if (include_config) {
        o["duration_s"] = r.duration_s;
        o["warmup_s"] = r.warmup_s;
        o["config"] = r.config_echo;
      }
      arr.push_back(std::move(o));
    }
  }
  return arr.dump(2);
}

}  // namespace mlo
