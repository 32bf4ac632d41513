#pragma once

#include <filesystem>
#include <vector>

#include "tracon/admission.hpp"
#include "tracon/flow.hpp"

namespace tracon::io {

/// Per-period bar chart: total present (light blue), entering (dark
/// blue), rerouted (red), with a one/two-runway strip along the axis.
void write_period_chart_svg(const std::filesystem::path& path,
                            const std::vector<PeriodCounts>& counts);

/// Paired bars per cap: mean rerouting time (dark) and waiting time
/// (light), in minutes.
void write_sweep_chart_svg(const std::filesystem::path& path,
                           const std::vector<SweepRow>& rows);

} // namespace tracon::io
