#include "tracon/admission.hpp"

#include <algorithm>
#include <deque>

#include "tracon/error.hpp"

namespace tracon {

std::pair<SimOutput, DelayReport> run_capped(const SimConfig& config, const CapConfig& cap,
                                             const DemandSequence& demand,
                                             const RunwaySchedule& schedule,
                                             const TravelTimeDistribution& dist) {
    validate_sim_inputs(config, demand, schedule);
    if (cap.bounded() && *cap.max_in_tracon < 1) {
        throw InvalidInput("TRACON capacity limit must be >= 1");
    }

    SimState state(config, schedule, &dist);
    DelayReport report;
    std::deque<long> outside; // arrival ids, FIFO

    auto admit_while_below_cap = [&](long slot) {
        while (!outside.empty() &&
               (!cap.bounded() || state.n_in_tracon() < *cap.max_in_tracon)) {
            const long id = outside.front();
            outside.pop_front();
            report.planes[static_cast<std::size_t>(id)].admission_slot = slot;
            state.admit_sampled();
        }
    };

    for (long t = 0; t < config.horizon_slots; ++t) {
        state.begin_slot(t);
        const auto it = demand.entries.find(t);
        const int arriving = it == demand.entries.end() ? 0 : it->second;
        for (int i = 0; i < arriving; ++i) {
            PlaneDelay d;
            d.plane_id = static_cast<long>(report.planes.size());
            d.arrival_slot = t;
            report.planes.push_back(d);
            outside.push_back(d.plane_id);
        }
        admit_while_below_cap(t);
        if (state.land_reserved() > 0) admit_while_below_cap(t);
        if (state.land_queued() > 0) admit_while_below_cap(t);
        state.end_slot();
    }

    SimOutput output = state.finish();

    report.n_planes = static_cast<long>(report.planes.size());
    double waiting_sum = 0.0;
    double rerouting_sum = 0.0;
    long delayed = 0;
    for (const auto& d : report.planes) {
        if (!d.admission_slot) {
            ++report.n_unlanded;
            continue;
        }
        const auto& p = output.planes[static_cast<std::size_t>(d.plane_id)];
        if (!p.landed()) {
            ++report.n_unlanded;
            continue;
        }
        ++report.n_landed;
        const long waiting = *d.waiting_slots();
        const long rerouting = p.rerouting_slots();
        waiting_sum += static_cast<double>(waiting);
        rerouting_sum += static_cast<double>(rerouting);
        if (waiting + rerouting >= 1) ++delayed;
    }
    if (report.n_landed > 0) {
        const double n = static_cast<double>(report.n_landed);
        report.mean_waiting_s = waiting_sum / n * kSlotSeconds;
        report.mean_rerouting_s = rerouting_sum / n * kSlotSeconds;
        report.percent_delayed = 100.0 * static_cast<double>(delayed) / n;
    }
    return {std::move(output), std::move(report)};
}

std::vector<SweepRow> sweep_caps(const SimConfig& config, std::vector<CapConfig> caps,
                                 const DemandSequence& demand, const RunwaySchedule& schedule,
                                 const TravelTimeDistribution& dist) {
    if (caps.empty()) throw InvalidInput("cap sweep requires at least one cap");
    std::sort(caps.begin(), caps.end(), [](const CapConfig& a, const CapConfig& b) {
        if (a.bounded() != b.bounded()) return a.bounded(); // unbounded sorts last
        return a.bounded() && *a.max_in_tracon < *b.max_in_tracon;
    });

    std::vector<SweepRow> rows;
    rows.reserve(caps.size());
    for (const auto& cap : caps) {
        auto [output, report] = run_capped(config, cap, demand, schedule, dist);
        rows.push_back({cap, std::move(report)});
    }
    return rows;
}

} // namespace tracon
