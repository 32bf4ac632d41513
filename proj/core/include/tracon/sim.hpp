#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tracon/flow_types.hpp"
#include "tracon/rng.hpp"
#include "tracon/travel_time.hpp"

namespace tracon {

/// Discrete-time arrival model parameters: 30-second slots, 2-minute
/// (4-slot) runway lockout after each landing.
struct SimConfig {
    long horizon_slots = kSlotsPerDay;
    std::uint64_t seed = 1;
    int n_runways = 2;
    int lockout_slots = 4;
};

/// Number of aircraft entering per slot; slots not present enter zero.
struct DemandSequence {
    std::map<long, int> entries;

    long total() const {
        long n = 0;
        for (const auto& [slot, count] : entries) n += count;
        return n;
    }
};

/// Half-open slot interval [from, to).
struct SlotInterval {
    long from = 0;
    long to = 0;
};

/// Per-runway open intervals; a runway accepts landings only while open.
struct RunwaySchedule {
    std::vector<std::vector<SlotInterval>> open; // index = runway

    static RunwaySchedule always_open(int n_runways, long horizon_slots);
    bool open_at(int runway, long slot) const;
    bool open_through(int runway, long from, long to) const; // [from, to)
};

/// An arrival whose nominal travel time is already known; lets callers
/// (validation runs, oracle tests) bypass the random draw.
struct PlannedArrival {
    long entry_slot = 0;
    int nominal_slots = 1;
};

struct PlaneResult {
    long plane_id = 0;
    long entry_slot = 0;
    int nominal_slots = 0;
    long nominal_landing_slot = 0;
    std::optional<long> actual_landing_slot;
    std::optional<int> runway;

    bool landed() const { return actual_landing_slot.has_value(); }
    long rerouting_slots() const {
        return landed() ? *actual_landing_slot - nominal_landing_slot : 0;
    }
    bool operator==(const PlaneResult&) const = default;
};

struct SlotStats {
    int n_in_tracon = 0;
    int n_rerouted = 0;             // airborne past nominal landing slot
    std::uint8_t runway_occupied = 0; // bit r set while runway r is in lockout

    bool operator==(const SlotStats&) const = default;
};

struct SimOutput {
    std::vector<PlaneResult> planes; // ordered by plane_id
    std::vector<SlotStats> slots;    // one entry per horizon slot

    long n_unlanded() const {
        long n = 0;
        for (const auto& p : planes) n += p.landed() ? 0 : 1;
        return n;
    }
    bool operator==(const SimOutput&) const = default;
};

/// Single-slot simulation state. run() is a fold of step() over the
/// horizon; admission control drives the finer-grained phases directly.
class SimState {
public:
    SimState(const SimConfig& config, const RunwaySchedule& schedule,
             const TravelTimeDistribution* dist);

    long clock() const { return clock_; }
    int n_in_tracon() const { return inside_; }

    /// Runs all phases of one slot: intake of `entrants` planes (each
    /// drawing a nominal travel time), reserved landings, queue landings,
    /// stats. Throws on out-of-order slots.
    void step(long slot, int entrants);

    /// step() with pre-drawn nominal travel times.
    void step_planned(long slot, const std::vector<int>& nominals);

    // Phase-level interface (used by the admission-control layer).
    void begin_slot(long slot);
    long admit(int nominal_slots);   // returns plane id
    long admit_sampled();            // draws the nominal from the distribution
    int land_reserved();             // returns number of planes landed
    int land_queued();
    void end_slot();

    SimOutput finish() const;

private:
    struct Occupied {
        long plane = -1;  // -1 for a lockout left by a landing
        bool is_lock = false;
    };

    bool runway_free_for(int runway, long from) const;
    void land(long plane, int runway);
    void void_overlapping_reservations(int runway, long from, long to);

    SimConfig config_;
    RunwaySchedule schedule_;
    const TravelTimeDistribution* dist_;
    Rng rng_;

    long clock_ = 0;
    bool in_slot_ = false;
    int inside_ = 0;

    std::vector<PlaneResult> planes_;
    std::vector<std::map<long, Occupied>> occupied_; // per runway: start -> interval
    std::vector<long> last_landing_;                 // per runway, -1 if none

    // Planes flying without a reservation, keyed by nominal landing slot.
    std::multimap<long, long> pending_;
    // Planes past their nominal landing slot: (nominal landing, entry, id).
    std::set<std::tuple<long, long, long>> queue_;

    std::vector<SlotStats> stats_;
};

void validate_sim_inputs(const SimConfig& config, const DemandSequence& demand,
                         const RunwaySchedule& schedule);

/// The full model: per slot, entrants draw nominal travel times and try to
/// reserve a runway for [entry + nominal, entry + nominal + lockout);
/// planes that cannot reserve fly their nominal time and then queue; free
/// runways serve the queue in ascending nominal-landing order.
/// Deterministic for a fixed (config, demand, schedule, dist).
SimOutput run(const SimConfig& config, const DemandSequence& demand,
              const RunwaySchedule& schedule, const TravelTimeDistribution& dist);

/// run() with explicit nominal travel times (no random draws).
SimOutput run_planned(const SimConfig& config, const std::vector<PlannedArrival>& arrivals,
                      const RunwaySchedule& schedule);

/// Sliding-window landing counts scaled to landings/hour; one value per
/// window start slot.
std::vector<double> throughput(const SimOutput& output, long window_slots);

struct FlightRecordsFromSim {
    std::vector<FlightRecord> records;
    long n_excluded = 0; // unlanded planes are not convertible
};

/// Bridge into the flow-analysis module: slot indices become seconds, and
/// a plane is Rerouted iff it landed after its nominal landing slot.
FlightRecordsFromSim to_flight_records(const SimOutput& output);

} // namespace tracon
