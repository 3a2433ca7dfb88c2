#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlo/dcf.hpp"
#include "mlo/mld.hpp"
#include "mlo/phy.hpp"

namespace mlo {

struct BssConfig {
  std::string name;
  MldConfig mld;
  std::optional<double> load_bps;  // overrides the even split when set

  friend bool operator==(const BssConfig&, const BssConfig&) = default;
};

/// Everything needed to reproduce one simulated deployment.
struct Scenario {
  std::string name = "scenario";
  std::vector<ChannelId> channels;
  std::vector<BssConfig> bss;
  /// Total offered load split evenly over BSSs without an explicit load.
  std::optional<double> total_load_bps;
  std::int64_t packet_size_bytes = 12000;
  phy::PhyConfig phy;
  phy::AckParams ack;
  dcf::DcfParams dcf;
  bool collisions = true;
  double duration_s = 30.0;
  double warmup_fraction = 0.1;
  std::vector<std::uint64_t> seeds{1};

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Carries every validation failure, each prefixed with its field path.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Returns an empty list for a valid scenario.
[[nodiscard]] std::vector<std::string> validation_problems(const Scenario& s);
/// Throws ValidationError if validation_problems is non-empty.
void validate(const Scenario& s);

/// Offered load per BSS after applying the even split.
[[nodiscard]] std::vector<double> per_bss_loads(const Scenario& s);

/// Scheme sets for the contention-free, crowded and workaround studies.
/// Names: "fig2", "fig4", "fig5". Throws std::invalid_argument otherwise.
[[nodiscard]] std::vector<Scenario> preset(const std::string& name, double total_load_bps);
[[nodiscard]] std::vector<std::string> preset_names();

inline const std::vector<double>& default_load_grid_bps() {
  static const std::vector<double> grid{0.1e9, 0.25e9, 0.5e9, 0.75e9,
                                        1.0e9, 1.5e9,  2.0e9, 2.5e9};
  return grid;
}

}  // namespace mlo
