#include "tracon/sim.hpp"

#include <algorithm>
#include <cassert>

#include "tracon/error.hpp"

namespace tracon {

namespace {

std::vector<SlotInterval> normalize_intervals(std::vector<SlotInterval> intervals,
                                              long horizon, const char* what) {
    std::sort(intervals.begin(), intervals.end(),
              [](const SlotInterval& a, const SlotInterval& b) { return a.from < b.from; });
    std::vector<SlotInterval> merged;
    for (const auto& iv : intervals) {
        if (iv.from < 0 || iv.to > horizon || iv.from >= iv.to) {
            throw InvalidInput(std::string(what) + ": interval outside horizon or empty");
        }
        if (!merged.empty() && iv.from < merged.back().to) {
            throw InvalidInput(std::string(what) + ": overlapping open intervals");
        }
        if (!merged.empty() && iv.from == merged.back().to) {
            merged.back().to = iv.to; // touching intervals are one open stretch
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

} // namespace

RunwaySchedule RunwaySchedule::always_open(int n_runways, long horizon_slots) {
    RunwaySchedule s;
    s.open.assign(static_cast<std::size_t>(n_runways), {SlotInterval{0, horizon_slots}});
    return s;
}

bool RunwaySchedule::open_at(int runway, long slot) const {
    return open_through(runway, slot, slot + 1);
}

bool RunwaySchedule::open_through(int runway, long from, long to) const {
    const auto& intervals = open[static_cast<std::size_t>(runway)];
    auto it = std::upper_bound(intervals.begin(), intervals.end(), from,
                               [](long v, const SlotInterval& iv) { return v < iv.from; });
    if (it == intervals.begin()) return false;
    --it;
    return it->from <= from && to <= it->to;
}

void validate_sim_inputs(const SimConfig& config, const DemandSequence& demand,
                         const RunwaySchedule& schedule) {
    if (config.horizon_slots < 1) throw InvalidInput("horizon must be at least one slot");
    if (config.n_runways < 1) throw InvalidInput("at least one runway is required");
    if (config.lockout_slots * kSlotSeconds != 120.0) {
        throw InvalidInput("runway lockout must cover two minutes (4 slots of 30 s)");
    }
    if (schedule.open.size() != static_cast<std::size_t>(config.n_runways)) {
        throw InvalidInput("schedule must describe exactly the configured runways");
    }
    for (const auto& [slot, count] : demand.entries) {
        if (slot < 0 || slot >= config.horizon_slots) {
            throw InvalidInput("demand references slot " + std::to_string(slot) +
                               " outside the horizon");
        }
        if (count < 0) throw InvalidInput("demand counts must be >= 0");
    }
    for (const auto& intervals : schedule.open) {
        normalize_intervals(intervals, config.horizon_slots, "runway schedule");
    }
}

SimState::SimState(const SimConfig& config, const RunwaySchedule& schedule,
                   const TravelTimeDistribution* dist)
    : config_(config), schedule_(schedule), dist_(dist), rng_(config.seed) {
    for (auto& intervals : schedule_.open) {
        intervals = normalize_intervals(intervals, config_.horizon_slots, "runway schedule");
    }
    occupied_.resize(static_cast<std::size_t>(config_.n_runways));
    last_landing_.assign(static_cast<std::size_t>(config_.n_runways), -1);
    stats_.reserve(static_cast<std::size_t>(config_.horizon_slots));
}

bool SimState::runway_free_for(int runway, long from) const {
    const auto& occ = occupied_[static_cast<std::size_t>(runway)];
    const auto it = occ.lower_bound(from - (config_.lockout_slots - 1));
    return it == occ.end() || it->first >= from + config_.lockout_slots;
}

void SimState::begin_slot(long slot) {
    if (in_slot_ || slot != clock_) {
        throw InvalidInput("simulation slots must be processed consecutively");
    }
    in_slot_ = true;
}

long SimState::admit(int nominal_slots) {
    assert(in_slot_);
    if (nominal_slots < 1) throw InvalidInput("nominal travel time must be >= 1 slot");
    const long id = static_cast<long>(planes_.size());
    PlaneResult plane;
    plane.plane_id = id;
    plane.entry_slot = clock_;
    plane.nominal_slots = nominal_slots;
    plane.nominal_landing_slot = clock_ + nominal_slots;
    planes_.push_back(plane);
    ++inside_;

    const long landing_from = plane.nominal_landing_slot;
    for (int r = 0; r < config_.n_runways; ++r) {
        if (schedule_.open_through(r, landing_from, landing_from + config_.lockout_slots) &&
            runway_free_for(r, landing_from)) {
            occupied_[static_cast<std::size_t>(r)][landing_from] = {id, false};
            return id;
        }
    }
    pending_.emplace(landing_from, id);
    return id;
}

long SimState::admit_sampled() {
    if (dist_ == nullptr) {
        throw InvalidInput("no travel time distribution attached to this simulation");
    }
    return admit(dist_->sample(rng_));
}

void SimState::land(long plane, int runway) {
    auto& p = planes_[static_cast<std::size_t>(plane)];
    p.actual_landing_slot = clock_;
    p.runway = runway;
    last_landing_[static_cast<std::size_t>(runway)] = clock_;
    --inside_;
}

int SimState::land_reserved() {
    assert(in_slot_);
    int landed = 0;
    for (int r = 0; r < config_.n_runways; ++r) {
        auto& occ = occupied_[static_cast<std::size_t>(r)];
        const auto it = occ.find(clock_);
        if (it != occ.end() && !it->second.is_lock) {
            land(it->second.plane, r);
            it->second.is_lock = true;
            ++landed;
        }
    }
    return landed;
}

void SimState::void_overlapping_reservations(int runway, long from, long to) {
    auto& occ = occupied_[static_cast<std::size_t>(runway)];
    auto it = occ.lower_bound(from);
    while (it != occ.end() && it->first < to) {
        assert(!it->second.is_lock);
        pending_.emplace(it->first, it->second.plane);
        it = occ.erase(it);
    }
}

int SimState::land_queued() {
    assert(in_slot_);
    while (!pending_.empty() && pending_.begin()->first <= clock_) {
        const auto [landing_from, id] = *pending_.begin();
        pending_.erase(pending_.begin());
        queue_.insert({landing_from, planes_[static_cast<std::size_t>(id)].entry_slot, id});
    }

    int landed = 0;
    while (!queue_.empty()) {
        // A free runway hands the slot to the queue head. Runways whose
        // next reservation starts within the new lockout would void it;
        // prefer runways that void nothing, then the lowest index.
        int best = -1;
        bool best_voids = true;
        for (int r = 0; r < config_.n_runways; ++r) {
            if (!schedule_.open_at(r, clock_)) continue;
            const auto& occ = occupied_[static_cast<std::size_t>(r)];
            auto it = occ.upper_bound(clock_);
            if (it != occ.begin()) {
                const auto& prev = *std::prev(it);
                if (prev.first + config_.lockout_slots > clock_) continue; // still locked
            }
            const bool voids = it != occ.end() && it->first < clock_ + config_.lockout_slots;
            if (best == -1 || (best_voids && !voids)) {
                best = r;
                best_voids = voids;
            }
        }
        if (best == -1) break;

        const auto [nominal_landing, entry_slot, id] = *queue_.begin();
        queue_.erase(queue_.begin());
        void_overlapping_reservations(best, clock_ + 1, clock_ + config_.lockout_slots);
        occupied_[static_cast<std::size_t>(best)][clock_] = {id, true};
        land(id, best);
        ++landed;
    }
    return landed;
}

void SimState::end_slot() {
    assert(in_slot_);
    SlotStats s;
    s.n_in_tracon = inside_;
    s.n_rerouted = static_cast<int>(queue_.size());
    for (int r = 0; r < config_.n_runways; ++r) {
        const long last = last_landing_[static_cast<std::size_t>(r)];
        if (last >= 0 && clock_ - last < config_.lockout_slots) {
            s.runway_occupied |= static_cast<std::uint8_t>(1u << r);
        }
    }
    stats_.push_back(s);
    ++clock_;
    in_slot_ = false;
}

void SimState::step(long slot, int entrants) {
    begin_slot(slot);
    for (int i = 0; i < entrants; ++i) admit_sampled();
    land_reserved();
    land_queued();
    end_slot();
}

void SimState::step_planned(long slot, const std::vector<int>& nominals) {
    begin_slot(slot);
    for (const int n : nominals) admit(n);
    land_reserved();
    land_queued();
    end_slot();
}

SimOutput SimState::finish() const {
    return SimOutput{planes_, stats_};
}

SimOutput run(const SimConfig& config, const DemandSequence& demand,
              const RunwaySchedule& schedule, const TravelTimeDistribution& dist) {
    validate_sim_inputs(config, demand, schedule);
    SimState state(config, schedule, &dist);
    for (long t = 0; t < config.horizon_slots; ++t) {
        const auto it = demand.entries.find(t);
        state.step(t, it == demand.entries.end() ? 0 : it->second);
    }
    return state.finish();
}

SimOutput run_planned(const SimConfig& config, const std::vector<PlannedArrival>& arrivals,
                      const RunwaySchedule& schedule) {
    DemandSequence demand;
    std::map<long, std::vector<int>> by_slot;
    for (const auto& a : arrivals) {
        demand.entries[a.entry_slot] += 1;
        by_slot[a.entry_slot].push_back(a.nominal_slots);
    }
    validate_sim_inputs(config, demand, schedule);
    SimState state(config, schedule, nullptr);
    static const std::vector<int> kNone;
    for (long t = 0; t < config.horizon_slots; ++t) {
        const auto it = by_slot.find(t);
        state.step_planned(t, it == by_slot.end() ? kNone : it->second);
    }
    return state.finish();
}

std::vector<double> throughput(const SimOutput& output, long window_slots) {
    if (window_slots < 1) throw InvalidInput("throughput window must be >= 1 slot");
    const long horizon = static_cast<long>(output.slots.size());
    std::vector<long> landings(static_cast<std::size_t>(horizon) + 1, 0);
    for (const auto& p : output.planes) {
        if (p.landed() && *p.actual_landing_slot < horizon) {
            landings[static_cast<std::size_t>(*p.actual_landing_slot) + 1] += 1;
        }
    }
    for (std::size_t i = 1; i < landings.size(); ++i) landings[i] += landings[i - 1];

    std::vector<double> flows;
    if (horizon < window_slots) return flows;
    flows.reserve(static_cast<std::size_t>(horizon - window_slots + 1));
    const double scale = 3600.0 / (static_cast<double>(window_slots) * kSlotSeconds);
    for (long s = 0; s + window_slots <= horizon; ++s) {
        const long count = landings[static_cast<std::size_t>(s + window_slots)] -
                           landings[static_cast<std::size_t>(s)];
        flows.push_back(static_cast<double>(count) * scale);
    }
    return flows;
}

FlightRecordsFromSim to_flight_records(const SimOutput& output) {
    FlightRecordsFromSim out;
    out.records.reserve(output.planes.size());
    for (const auto& p : output.planes) {
        if (!p.landed()) {
            ++out.n_excluded;
            continue;
        }
        FlightRecord rec;
        rec.flight_id = std::to_string(p.plane_id);
        rec.entry_t = static_cast<double>(p.entry_slot) * kSlotSeconds;
        rec.landing_t = static_cast<double>(*p.actual_landing_slot) * kSlotSeconds;
        rec.runway = "R" + std::to_string(*p.runway + 1);
        rec.classification = (*p.actual_landing_slot > p.nominal_landing_slot)
                                 ? rerouted_class(ReroutedDetail::Other)
                                 : direct_class();
        out.records.push_back(std::move(rec));
    }
    return out;
}

} // namespace tracon
