#include "tracon/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tracon/error.hpp"

namespace tracon {

namespace {

/// O(1) range-max queries after O(n log n) build.
class RangeMax {
public:
    explicit RangeMax(std::vector<int> values) {
        if (values.empty()) return;
        table_.push_back(std::move(values));
        for (std::size_t len = 1; 2 * len <= table_.front().size(); len *= 2) {
            const auto& prev = table_.back();
            std::vector<int> row(prev.size() - len);
            for (std::size_t i = 0; i < row.size(); ++i) {
                row[i] = std::max(prev[i], prev[i + len]);
            }
            table_.push_back(std::move(row));
        }
    }

    /// Max over the inclusive index range [lo, hi].
    int query(std::size_t lo, std::size_t hi) const {
        const std::size_t n = hi - lo + 1;
        std::size_t level = 0;
        while ((std::size_t{2} << level) <= n) ++level;
        const std::size_t len = std::size_t{1} << level;
        return std::max(table_[level][lo], table_[level][hi + 1 - len]);
    }

private:
    std::vector<std::vector<int>> table_;
};

long period_of(double t, double period) {
    return static_cast<long>(std::floor(t / period));
}

int runways_in_use_verdict(const std::vector<long>& counts_per_label, double share) {
    long total = 0;
    long top = 0;
    for (long c : counts_per_label) {
        total += c;
        top = std::max(top, c);
    }
    if (total == 0) return 2; // nothing landed: treat as the nominal configuration
    return (static_cast<double>(top) / static_cast<double>(total) > share) ? 1 : 2;
}

} // namespace

void validate_records(const std::vector<FlightRecord>& records) {
    for (const auto& r : records) {
        if (!std::isfinite(r.entry_t) || !std::isfinite(r.landing_t)) {
            throw InvalidInput("flight '" + r.flight_id + "' has a non-finite time");
        }
        if (r.landing_t <= r.entry_t) {
            throw InvalidInput("flight '" + r.flight_id + "' lands at or before its entry");
        }
    }
}

std::vector<PeriodCounts> time_based_counts(const std::vector<FlightRecord>& records,
                                            const AnalysisParams& params) {
    if (params.period_s <= 0.0) throw InvalidInput("period must be positive");
    validate_records(records);
    if (records.empty()) return {};

    long k_min = period_of(records.front().entry_t, params.period_s);
    long k_max = k_min;
    for (const auto& r : records) {
        k_min = std::min(k_min, period_of(r.entry_t, params.period_s));
        k_max = std::max(k_max, period_of(r.landing_t, params.period_s));
    }

    const std::size_t n_periods = static_cast<std::size_t>(k_max - k_min + 1);
    std::vector<PeriodCounts> out(n_periods);
    for (std::size_t i = 0; i < n_periods; ++i) out[i].period_index = k_min + static_cast<long>(i);

    std::map<std::string, std::size_t> label_ids;
    std::vector<std::vector<long>> landings_per_label(n_periods);

    for (const auto& r : records) {
        const long ke = period_of(r.entry_t, params.period_s);
        const long kl = period_of(r.landing_t, params.period_s);
        out[static_cast<std::size_t>(ke - k_min)].entering += 1;
        out[static_cast<std::size_t>(kl - k_min)].landing += 1;
        for (long k = ke; k <= kl; ++k) {
            auto& pc = out[static_cast<std::size_t>(k - k_min)];
            pc.present += 1;
            if (r.classification.kind == TrackKind::Rerouted) pc.rerouted += 1;
        }
        const auto [it, inserted] = label_ids.try_emplace(r.runway, label_ids.size());
        auto& counts = landings_per_label[static_cast<std::size_t>(kl - k_min)];
        if (counts.size() <= it->second) counts.resize(label_ids.size(), 0);
        counts[it->second] += 1;
    }

    for (std::size_t i = 0; i < n_periods; ++i) {
        out[i].runways_in_use = runways_in_use_verdict(landings_per_label[i],
                                                       params.one_runway_share);
    }
    return out;
}

std::vector<AircraftMetrics> aircraft_based_metrics(const std::vector<FlightRecord>& records,
                                                    const AnalysisParams& params) {
    if (params.window_T_s <= 0.0) throw InvalidInput("analysis window T must be positive");
    validate_records(records);
    if (records.empty()) return {};

    const std::size_t n = records.size();

    // Presence changes only at entries and landings. Process entries
    // before landings at equal times so that a flight landing at the very
    // instant another enters still counts as co-present (closed intervals).
    struct Event {
        double t;
        bool is_entry;
        std::size_t flight;
    };
    std::vector<Event> events;
    events.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        events.push_back({records[i].entry_t, true, i});
        events.push_back({records[i].landing_t, false, i});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.is_entry > b.is_entry;
    });

    // Instantaneous presence at each distinct event time: all entries at
    // that time applied, no exits at that time applied yet.
    std::vector<double> instant_times;
    std::vector<int> present_all;
    std::vector<int> present_rerouted;
    int cur_all = 0;
    int cur_rer = 0;
    for (std::size_t i = 0; i < events.size();) {
        const double t = events[i].t;
        std::size_t j = i;
        for (; j < events.size() && events[j].t == t && events[j].is_entry; ++j) {
            ++cur_all;
            if (records[events[j].flight].classification.kind == TrackKind::Rerouted) ++cur_rer;
        }
        instant_times.push_back(t);
        present_all.push_back(cur_all);
        present_rerouted.push_back(cur_rer);
        for (; j < events.size() && events[j].t == t; ++j) {
            --cur_all;
            if (records[events[j].flight].classification.kind == TrackKind::Rerouted) --cur_rer;
        }
        i = j;
    }

    const RangeMax max_all(present_all);
    const RangeMax max_rer(present_rerouted);

    std::vector<double> entry_times;
    entry_times.reserve(n);
    struct Landing {
        double t;
        std::size_t label;
    };
    std::vector<Landing> landings;
    landings.reserve(n);
    std::map<std::string, std::size_t> label_ids;
    for (const auto& r : records) {
        entry_times.push_back(r.entry_t);
        const auto [it, ignored] = label_ids.try_emplace(r.runway, label_ids.size());
        landings.push_back({r.landing_t, it->second});
    }
    std::sort(entry_times.begin(), entry_times.end());
    std::sort(landings.begin(), landings.end(),
              [](const Landing& a, const Landing& b) { return a.t < b.t; });

    // Prefix landing counts per runway label for the in-use verdict.
    const std::size_t n_labels = label_ids.size();
    std::vector<std::vector<long>> label_prefix(n_labels,
                                                std::vector<long>(landings.size() + 1, 0));
    for (std::size_t i = 0; i < landings.size(); ++i) {
        for (std::size_t l = 0; l < n_labels; ++l) {
            label_prefix[l][i + 1] = label_prefix[l][i] + (landings[i].label == l ? 1 : 0);
        }
    }

    std::vector<double> landing_times;
    landing_times.reserve(landings.size());
    for (const auto& l : landings) landing_times.push_back(l.t);

    const double half_T = params.window_T_s / 2.0;
    const double per_hour = 3600.0 / params.window_T_s;

    auto count_in_window = [](const std::vector<double>& sorted, double lo, double hi) {
        // half-open [lo, hi)
        const auto a = std::lower_bound(sorted.begin(), sorted.end(), lo);
        const auto b = std::lower_bound(sorted.begin(), sorted.end(), hi);
        return static_cast<long>(b - a);
    };

    std::vector<AircraftMetrics> out;
    out.reserve(n);
    for (const auto& r : records) {
        AircraftMetrics m;
        m.flight_id = r.flight_id;

        const auto lo_it = std::lower_bound(instant_times.begin(), instant_times.end(), r.entry_t);
        const auto hi_it = std::upper_bound(instant_times.begin(), instant_times.end(), r.landing_t);
        const std::size_t lo = static_cast<std::size_t>(lo_it - instant_times.begin());
        const std::size_t hi = static_cast<std::size_t>(hi_it - instant_times.begin()) - 1;
        m.n_present = max_all.query(lo, hi);
        m.n_rerouted = max_rer.query(lo, hi);

        m.entering_flow = static_cast<double>(count_in_window(entry_times, r.entry_t - half_T,
                                                              r.entry_t + half_T)) * per_hour;
        m.landing_flow = static_cast<double>(count_in_window(landing_times, r.landing_t - half_T,
                                                             r.landing_t + half_T)) * per_hour;

        const auto wa = std::lower_bound(landing_times.begin(), landing_times.end(),
                                         r.landing_t - half_T) - landing_times.begin();
        const auto wb = std::lower_bound(landing_times.begin(), landing_times.end(),
                                         r.landing_t + half_T) - landing_times.begin();
        std::vector<long> in_window(n_labels, 0);
        for (std::size_t l = 0; l < n_labels; ++l) {
            in_window[l] = label_prefix[l][static_cast<std::size_t>(wb)] -
                           label_prefix[l][static_cast<std::size_t>(wa)];
        }
        m.runways_in_use = runways_in_use_verdict(in_window, params.one_runway_share);
        out.push_back(std::move(m));
    }
    return out;
}

OccupancyProfile occupancy_profile(const std::vector<AircraftMetrics>& metrics) {
    struct Acc {
        double sum_e = 0.0, sumsq_e = 0.0;
        double sum_l = 0.0, sumsq_l = 0.0;
        double sum_r = 0.0;
        long freq = 0;
    };
    std::map<std::pair<int, int>, Acc> groups;
    for (const auto& m : metrics) {
        auto& g = groups[{m.n_present, m.runways_in_use}];
        g.sum_e += m.entering_flow;
        g.sumsq_e += m.entering_flow * m.entering_flow;
        g.sum_l += m.landing_flow;
        g.sumsq_l += m.landing_flow * m.landing_flow;
        g.sum_r += m.n_rerouted;
        g.freq += 1;
    }

    OccupancyProfile profile;
    profile.bins.reserve(groups.size());
    for (const auto& [key, g] : groups) {
        OccupancyBin bin;
        bin.n_present = key.first;
        bin.runways_in_use = key.second;
        bin.frequency = g.freq;
        const double nf = static_cast<double>(g.freq);
        bin.mean_entering_flow = g.sum_e / nf;
        bin.mean_landing_flow = g.sum_l / nf;
        bin.mean_rerouted = g.sum_r / nf;
        bin.std_entering_flow =
            std::sqrt(std::max(0.0, g.sumsq_e / nf - bin.mean_entering_flow * bin.mean_entering_flow));
        bin.std_landing_flow =
            std::sqrt(std::max(0.0, g.sumsq_l / nf - bin.mean_landing_flow * bin.mean_landing_flow));
        profile.bins.push_back(bin);
    }
    return profile;
}

} // namespace tracon
