#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlo/scenario.hpp"

namespace mlo {

/// Scenario files are YAML: top-level `name`, `channels`, and the nested
/// sections `traffic`, `sim`, `phy`, `ack`, `dcf`, plus a `bss` list. Omitted
/// keys keep their defaults; unknown keys are rejected. See
/// docs/scenario-format.md for the schema.
[[nodiscard]] Scenario scenario_from_yaml(const std::string& text);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);
/// Emits every field explicitly so the output parses back to an equal value.
[[nodiscard]] std::string to_yaml(const Scenario& scenario);

/// A cross product of schemes x total loads x seeds.
struct SweepSpec {
  std::vector<Scenario> schemes;
  std::vector<double> loads_bps;
  std::vector<std::uint64_t> seeds;
};

/// Sweep files name either a `preset` or a list of `scenarios` (paths
/// relative to the sweep file), plus optional `loads_bps`, `seeds`,
/// `duration_s` and `warmup_fraction` applied to every scheme.
[[nodiscard]] SweepSpec load_sweep(const std::filesystem::path& path);
[[nodiscard]] SweepSpec sweep_from_yaml(const std::string& text,
                                        const std::filesystem::path& base_dir);

/// Raised for malformed files; carries the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlo
