#pragma once

#include <string>

#include "json.hpp"

#include "hajlasz/characterizations.hpp"

namespace hajlasz {

/// One row per corpus item: the six functionals, the Hajlasz bound constant,
/// all pairwise ratios and the per-row check flags (1/0).
std::string report_csv(const EquivalenceReport& report);

/// Ratio statistics, assertion outcomes and run parameters.
nlohmann::json report_summary(const EquivalenceReport& report);

/// Renders CSV text as an aligned plain-text table.
std::string render_table(const std::string& csv_text);

}  // namespace hajlasz
