#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tracon/geometry.hpp"
#include "tracon/rng.hpp"
#include "tracon/sim.hpp"

namespace tracon {

/// Piecewise-constant arrival rate: (from_slot, rate in aircraft/hour),
/// from_slot strictly increasing starting at 0.
struct DemandProfile {
    std::vector<std::pair<long, double>> segments;
};

/// Independent per-slot Poisson counts with mean rate * 30 s / 3600.
DemandSequence gen_demand(const DemandProfile& profile, long horizon_slots, Rng& rng);

enum class ArchetypeKind { Direct, STurn, Hippodrome };

/// Parameters of one synthetic arrival trajectory.
struct TrackTemplate {
    ArchetypeKind kind = ArchetypeKind::Direct;
    double entry_bearing_deg = 0.0; // compass bearing of the entry point seen from the airport
    double entry_radius_nm = 40.0;  // <= 50
    double speed_kn = 210.0;
    double noise_sd_nm = 0.0;
};

/// Generated track plus its ground-truth label. Direct tracks follow
/// entry->runway with waypoint doglegs; S-turns insert one +-60 degree
/// lateral excursion netting ~0 turn; hippodromes insert a racetrack
/// holding pattern flown twice (added winding ~720 degrees).
std::pair<Track, Classification> gen_track(const TrackTemplate& tmpl, Rng& rng);

/// Randomized template of the given kind (bearing, radius, speed).
TrackTemplate random_template(ArchetypeKind kind, double noise_sd_nm, Rng& rng);

struct LabeledTrack {
    Track track;
    Classification label;
};

/// Mixed corpus: 60% direct, 20% S-turn, 20% hippodrome, deterministic
/// for a fixed rng state.
std::vector<LabeledTrack> gen_track_corpus(int count, double noise_sd_nm, Rng& rng);

/// Everything a simulation run consumes.
struct Scenario {
    SimConfig config;
    DemandSequence demand;
    RunwaySchedule schedule;
    TravelTimeDistribution dist;
};

const std::vector<std::string>& scenario_preset_names();

/// Named presets echoing the daily arrival patterns the analyses target:
///   quiet_day              spaced arrivals, both runways, no contention
///   saturated_one_runway   single-runway day with fog closures and a rush
///   fog_day_runway_closure runway 2 closed for the first half of the day
///   two_runway_peak        two-day horizon with afternoon peaks
/// Throws InvalidInput for unknown names.
Scenario gen_scenario(const std::string& name, Rng& rng);

} // namespace tracon
