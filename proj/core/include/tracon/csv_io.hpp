#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tracon/admission.hpp"
#include "tracon/flow.hpp"
#include "tracon/geometry.hpp"
#include "tracon/sim.hpp"
#include "tracon/synthetic.hpp"
#include "tracon/travel_time.hpp"

namespace tracon::io {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& s, const std::string& context);
long parse_long(const std::string& s, const std::string& context);
std::uint64_t parse_u64(const std::string& s, const std::string& context);

/// Classification result plus decision features, one row per flight.
struct ClassifiedTrack {
    std::string flight_id;
    Classification classification;
    TrackFeatures features;
};

// Track CSV: flight_id,t,x,y — rows grouped by flight, time-sorted.
std::vector<Track> read_tracks_csv(const std::filesystem::path& path);
void write_tracks_csv(const std::filesystem::path& path, const std::vector<Track>& tracks);

// Classification CSV: flight_id,kind,detail,excess_ratio,net_turn,total_winding
void write_classifications_csv(const std::filesystem::path& path,
                               const std::vector<ClassifiedTrack>& rows);
std::vector<ClassifiedTrack> read_classifications_csv(const std::filesystem::path& path);

// FlightRecord CSV: flight_id,entry_t,landing_t,runway,kind (times in seconds)
std::vector<FlightRecord> read_flight_records_csv(const std::filesystem::path& path);
void write_flight_records_csv(const std::filesystem::path& path,
                              const std::vector<FlightRecord>& records);

// PeriodCounts CSV: period_index,period_start_s,present,entering,landing,rerouted,runways_in_use
void write_period_counts_csv(const std::filesystem::path& path,
                             const std::vector<PeriodCounts>& counts, double period_s);
std::vector<PeriodCounts> read_period_counts_csv(const std::filesystem::path& path);

// Occupancy CSV: n_present,runways_in_use,mean_entering_flow,std_entering_flow,
//                mean_landing_flow,std_landing_flow,mean_rerouted,frequency
void write_occupancy_csv(const std::filesystem::path& path, const OccupancyProfile& profile);
OccupancyProfile read_occupancy_csv(const std::filesystem::path& path);

// Travel time distribution CSV: slots,probability — sorted by slots.
void write_distribution_csv(const std::filesystem::path& path,
                            const TravelTimeDistribution& dist);
TravelTimeDistribution read_distribution_csv(const std::filesystem::path& path);

// Demand CSV: slot,entries — only slots with nonzero entries.
void write_demand_csv(const std::filesystem::path& path, const DemandSequence& demand);
DemandSequence read_demand_csv(const std::filesystem::path& path);

// Schedule CSV: runway,open_from_slot,open_to_slot — runway labels R1, R2, ...;
// the to-slot is exclusive.
void write_schedule_csv(const std::filesystem::path& path, const RunwaySchedule& schedule);
RunwaySchedule read_schedule_csv(const std::filesystem::path& path, int n_runways);

// Per-plane CSV: plane_id,entry_slot,nominal_slots,nominal_landing_slot,
//                actual_landing_slot,runway,rerouting_slots — unlanded planes
//                leave actual/runway/rerouting empty.
void write_planes_csv(const std::filesystem::path& path, const std::vector<PlaneResult>& planes);
std::vector<PlaneResult> read_planes_csv(const std::filesystem::path& path);

// Per-slot CSV: slot,n_in_tracon,n_rerouted,r1_occupied,r2_occupied,...
void write_slots_csv(const std::filesystem::path& path, const std::vector<SlotStats>& slots,
                     int n_runways);
std::vector<SlotStats> read_slots_csv(const std::filesystem::path& path);

// Sweep CSV: cap,mean_waiting_s,mean_rerouting_s,percent_delayed,n_planes,n_unlanded
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// Flat key=value scenario config: horizon_slots, seed, n_runways,
/// distribution_file, demand_file, schedule_file. Relative paths resolve
/// against the config file's directory.
struct ScenarioConfig {
    SimConfig config;
    std::filesystem::path distribution_file;
    std::filesystem::path demand_file;
    std::filesystem::path schedule_file;
};

ScenarioConfig read_scenario_config(const std::filesystem::path& path);
void write_scenario_config(const std::filesystem::path& path, const ScenarioConfig& sc);

/// Loads the three referenced files and validates them together.
Scenario load_scenario(const ScenarioConfig& sc);

} // namespace tracon::io
