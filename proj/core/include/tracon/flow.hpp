#pragma once

#include <vector>

#include "tracon/flow_types.hpp"

namespace tracon {

/// Windows and thresholds of the two counting methodologies.
/// T and period default to 15 minutes; use 16 minutes (960 s) when
/// analyzing simulator output so windows line up with the discrete model.
struct AnalysisParams {
    double window_T_s = 900.0;
    double period_s = 900.0;
    double one_runway_share = 0.75;
};

/// Counts for one fixed-length period of the time-based methodology.
/// A flight can be present/rerouted in several periods but enters and
/// lands in exactly one each.
struct PeriodCounts {
    long period_index = 0;
    int present = 0;
    int entering = 0;
    int landing = 0;
    int rerouted = 0;
    int runways_in_use = 2;
};

/// Per-aircraft view: occupancy, flows and rerouting seen from one
/// flight's perspective. Flows are aircraft/hour.
struct AircraftMetrics {
    std::string flight_id;
    int n_present = 1;
    double entering_flow = 0.0;
    double landing_flow = 0.0;
    int n_rerouted = 0;
    int runways_in_use = 2;
};

/// One (n_present, runways_in_use) cell of the occupancy-binned profile.
struct OccupancyBin {
    int n_present = 0;
    int runways_in_use = 0;
    double mean_entering_flow = 0.0;
    double std_entering_flow = 0.0;
    double mean_landing_flow = 0.0;
    double std_landing_flow = 0.0;
    double mean_rerouted = 0.0;
    long frequency = 0;
};

struct OccupancyProfile {
    std::vector<OccupancyBin> bins; // sorted by (n_present, runways_in_use)
};

void validate_records(const std::vector<FlightRecord>& records);

/// Time-based methodology: fixed periods [k*period, (k+1)*period) anchored
/// at the epoch. Emits the contiguous period range spanning the records.
std::vector<PeriodCounts> time_based_counts(const std::vector<FlightRecord>& records,
                                            const AnalysisParams& params = {});

/// Aircraft-based methodology: per flight, maximum simultaneous
/// co-presence, flows over windows of length T centered on its entry and
/// landing, rerouted co-presence and the runways-in-use verdict.
std::vector<AircraftMetrics> aircraft_based_metrics(const std::vector<FlightRecord>& records,
                                                    const AnalysisParams& params = {});

/// Group metrics by (n_present, runways_in_use); population standard
/// deviations. Empty input yields an empty profile.
OccupancyProfile occupancy_profile(const std::vector<AircraftMetrics>& metrics);

} // namespace tracon
