#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mlo/metrics.hpp"

namespace mlo {

/// Export columns, in order. occ_0..occ_k is widened to the largest link
/// count among the exported reports; narrower rows leave the extra cells
/// empty. Absent statistics (no samples) are empty cells in CSV and null in
/// JSON. Pooled reports carry "pooled" in the seed column.
[[nodiscard]] std::vector<std::string> export_columns(std::span<const metrics::RunReport> reports);

void write_csv(std::ostream& out, std::span<const metrics::RunReport> reports);

/// JSON array with one object per (scheme, bss, load, seed) row, using the
/// CSV column names as keys. With `include_config`, each object also embeds
/// the resolved scenario under "config".
[[nodiscard]] std::string to_json(std::span<const metrics::RunReport> reports,
                                  bool include_config = false);

}  // namespace mlo
