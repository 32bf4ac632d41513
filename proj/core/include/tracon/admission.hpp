#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tracon/sim.hpp"

namespace tracon {

/// Limit on simultaneous aircraft inside the TRACON; nullopt = unbounded.
struct CapConfig {
    std::optional<long> max_in_tracon;

    bool bounded() const { return max_in_tracon.has_value(); }
};

/// One arriving plane's delay split: slots held outside the TRACON by the
/// cap, and slots spent holding inside past its nominal landing.
struct PlaneDelay {
    long plane_id = 0;     // matches SimOutput plane ids for admitted planes
    long arrival_slot = 0;
    std::optional<long> admission_slot; // empty if never admitted
    std::optional<long> waiting_slots() const {
        if (!admission_slot) return std::nullopt;
        return *admission_slot - arrival_slot;
    }
};

/// Aggregates are computed over planes that landed within the horizon.
struct DelayReport {
    std::vector<PlaneDelay> planes; // ordered by arrival
    double mean_waiting_s = 0.0;
    double mean_rerouting_s = 0.0;
    double percent_delayed = 0.0; // total delay >= 1 slot
    long n_planes = 0;            // arrivals over the horizon
    long n_landed = 0;
    long n_unlanded = 0;          // still waiting, flying or queuing at horizon end
};

/// Capped-TRACON run: arrivals that would exceed the cap join an outer
/// FIFO queue; every landing frees one admission in the same slot, and
/// admissions continue while the TRACON is below the cap. Nominal travel
/// times are drawn at admission, so an unbounded cap reproduces run()
/// bit-identically under the same seed.
std::pair<SimOutput, DelayReport> run_capped(const SimConfig& config, const CapConfig& cap,
                                             const DemandSequence& demand,
                                             const RunwaySchedule& schedule,
                                             const TravelTimeDistribution& dist);

struct SweepRow {
    CapConfig cap;
    DelayReport report;
};

/// One run_capped per cap with identical seed and inputs; rows ordered by
/// cap ascending, unbounded last.
std::vector<SweepRow> sweep_caps(const SimConfig& config, std::vector<CapConfig> caps,
                                 const DemandSequence& demand, const RunwaySchedule& schedule,
                                 const TravelTimeDistribution& dist);

} // namespace tracon
