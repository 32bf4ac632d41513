#include "tracon/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tracon/error.hpp"
#include "tracon/travel_time.hpp"

namespace tracon {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTrackSampleDt = 60.0; // seconds between emitted points

struct Vec {
    double x = 0.0;
    double y = 0.0;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double s, Vec v) { return {s * v.x, s * v.y}; }
double norm(Vec v) { return std::sqrt(v.x * v.x + v.y * v.y); }
Vec unit(Vec v) {
    const double n = norm(v);
    return {v.x / n, v.y / n};
}
Vec perp_left(Vec v) { return {-v.y, v.x}; }

void validate_profile(const DemandProfile& profile) {
    if (profile.segments.empty() || profile.segments.front().first != 0) {
        throw InvalidInput("demand profile must start at slot 0");
    }
    long prev = -1;
    for (const auto& [from, rate] : profile.segments) {
        if (from <= prev) throw InvalidInput("demand profile slots must be strictly increasing");
        if (rate < 0.0) throw InvalidInput("demand profile rates must be >= 0");
        prev = from;
    }
}

/// Append a semicircular left or right turn, sampled every 15 degrees.
void append_arc(std::vector<Vec>& route, Vec& pos, Vec& dir, double radius, bool left) {
    const Vec to_center = left ? perp_left(dir) : (-1.0 * perp_left(dir));
    const Vec center = pos + radius * to_center;
    const double start_angle = std::atan2(pos.y - center.y, pos.x - center.x);
    const double sweep = left ? kPi : -kPi;
    const int steps = 12;
    for (int k = 1; k <= steps; ++k) {
        const double a = start_angle + sweep * static_cast<double>(k) / steps;
        pos = center + Vec{radius * std::cos(a), radius * std::sin(a)};
        route.push_back(pos);
    }
    dir = -1.0 * dir;
}

void append_straight(std::vector<Vec>& route, Vec& pos, Vec dir, double length) {
    pos = pos + length * dir;
    route.push_back(pos);
}

/// Walk the route polyline at constant speed, emitting a point every
/// kTrackSampleDt seconds, plus the exact final point.
Track sample_route(const std::vector<Vec>& route, double speed_kn, double noise_sd, Rng& rng) {
    const double speed_nm_s = speed_kn / 3600.0;
    const double step_nm = speed_nm_s * kTrackSampleDt;

    Track track;
    std::size_t seg = 0;
    double seg_used = 0.0;
    double emitted = 0.0;
    long k = 0;
    track.points.push_back({0.0, route.front().x, route.front().y});
    while (seg + 1 < route.size()) {
        const double seg_len = norm(route[seg + 1] - route[seg]);
        double remaining = step_nm - emitted;
        if (seg_used + remaining < seg_len) {
            seg_used += remaining;
            const Vec d = unit(route[seg + 1] - route[seg]);
            const Vec p = route[seg] + seg_used * d;
            ++k;
            track.points.push_back({static_cast<double>(k) * kTrackSampleDt, p.x, p.y});
            emitted = 0.0;
        } else {
            emitted += seg_len - seg_used;
            seg_used = 0.0;
            ++seg;
        }
    }
    // Exact endpoint, on the next whole second after the last sample.
    double total_len = 0.0;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) total_len += norm(route[i + 1] - route[i]);
    const double t_end = total_len / speed_nm_s;
    const double t_last = track.points.back().t;
    track.points.push_back({std::max(std::ceil(t_end), t_last + 1.0),
                            route.back().x, route.back().y});

    if (noise_sd > 0.0) {
        for (auto& p : track.points) {
            p.x += rng.gaussian(0.0, noise_sd);
            p.y += rng.gaussian(0.0, noise_sd);
        }
    }
    return track;
}

} // namespace

DemandSequence gen_demand(const DemandProfile& profile, long horizon_slots, Rng& rng) {
    validate_profile(profile);
    DemandSequence out;
    std::size_t seg = 0;
    for (long slot = 0; slot < horizon_slots; ++slot) {
        while (seg + 1 < profile.segments.size() && profile.segments[seg + 1].first <= slot) ++seg;
        const double mean = profile.segments[seg].second * kSlotSeconds / 3600.0;
        const int count = rng.poisson(mean);
        if (count > 0) out.entries[slot] = count;
    }
    return out;
}

std::pair<Track, Classification> gen_track(const TrackTemplate& tmpl, Rng& rng) {
    if (tmpl.speed_kn <= 0.0) throw InvalidInput("track template speed must be positive");
    if (tmpl.noise_sd_nm < 0.0) throw InvalidInput("track template noise must be >= 0");
    if (tmpl.entry_radius_nm > kTraconRadiusNm || tmpl.entry_radius_nm <= 0.0) {
        throw InvalidInput("entry radius must be in (0, 50] NM");
    }

    const double bearing_rad = tmpl.entry_bearing_deg * kPi / 180.0;
    const Vec entry{tmpl.entry_radius_nm * std::sin(bearing_rad),
                    tmpl.entry_radius_nm * std::cos(bearing_rad)};
    const Vec origin{0.0, 0.0};
    const Vec axis = unit(origin - entry);
    const Vec lateral = perp_left(axis);
    const double span = tmpl.entry_radius_nm;

    // Base route with two waypoint doglegs (each well under 30 degrees).
    std::vector<Vec> base;
    base.push_back(entry);
    const double d1 = rng.uniform(-0.07, 0.07) * span;
    const double d2 = rng.uniform(-0.07, 0.07) * span;
    base.push_back(entry + 0.35 * span * axis + d1 * lateral);
    base.push_back(entry + 0.70 * span * axis + d2 * lateral);
    base.push_back(origin);

    std::vector<Vec> route;
    Classification label = direct_class();
    if (tmpl.kind == ArchetypeKind::Direct) {
        route = base;
    } else {
        // Insert the maneuver at the second waypoint of the base route.
        route.assign(base.begin(), base.begin() + 2);
        Vec pos = base[1];
        Vec dir = unit(base[2] - base[1]);
        if (tmpl.kind == ArchetypeKind::STurn) {
            const double leg = std::min(6.0, 0.25 * span);
            const double c = std::cos(kPi / 3.0), s = std::sin(kPi / 3.0);
            const Vec out_dir{c * dir.x - s * dir.y, s * dir.x + c * dir.y};
            const Vec back_dir{c * dir.x + s * dir.y, -s * dir.x + c * dir.y};
            append_straight(route, pos, out_dir, leg);
            append_straight(route, pos, back_dir, leg);
            label = rerouted_class(ReroutedDetail::STurn);
        } else {
            const double radius = 2.0;
            const double leg = std::min(5.0, 0.15 * span);
            for (int circuit = 0; circuit < 2; ++circuit) {
                append_arc(route, pos, dir, radius, true);
                append_straight(route, pos, dir, leg);
                append_arc(route, pos, dir, radius, true);
                append_straight(route, pos, dir, leg);
            }
            label = rerouted_class(ReroutedDetail::Hippodrome);
        }
        route.push_back(base[2]);
        route.push_back(base[3]);
    }

    Track track = sample_route(route, tmpl.speed_kn, tmpl.noise_sd_nm, rng);
    return {std::move(track), label};
}

TrackTemplate random_template(ArchetypeKind kind, double noise_sd_nm, Rng& rng) {
    TrackTemplate t;
    t.kind = kind;
    t.entry_bearing_deg = rng.uniform(0.0, 360.0);
    t.entry_radius_nm = rng.uniform(28.0, 46.0);
    t.speed_kn = rng.uniform(180.0, 240.0);
    t.noise_sd_nm = noise_sd_nm;
    return t;
}

std::vector<LabeledTrack> gen_track_corpus(int count, double noise_sd_nm, Rng& rng) {
    std::vector<LabeledTrack> corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        ArchetypeKind kind = ArchetypeKind::Direct;
        if (i % 5 == 3) kind = ArchetypeKind::STurn;
        if (i % 5 == 4) kind = ArchetypeKind::Hippodrome;
        auto [track, label] = gen_track(random_template(kind, noise_sd_nm, rng), rng);
        char id[16];
        std::snprintf(id, sizeof(id), "T%05d", i);
        track.flight_id = id;
        corpus.push_back({std::move(track), label});
    }
    return corpus;
}

const std::vector<std::string>& scenario_preset_names() {
    static const std::vector<std::string> names = {
        "quiet_day", "saturated_one_runway", "fog_day_runway_closure", "two_runway_peak"};
    return names;
}

Scenario gen_scenario(const std::string& name, Rng& rng) {
    Scenario sc;
    sc.dist = default_travel_time_distribution();
    sc.config.seed = rng.next_u64();

    if (name == "quiet_day") {
        // Scheduled ops: one arrival every 15 slots (8/hour), 06:00-22:00,
        // both runways open. With nominal travel in 18..44 slots no three
        // landings can contend, so every plane lands on time.
        sc.config.horizon_slots = kSlotsPerDay;
        sc.config.n_runways = 2;
        sc.schedule = RunwaySchedule::always_open(2, sc.config.horizon_slots);
        for (long slot = 720; slot < 2640; slot += 15) sc.demand.entries[slot] = 1;
        return sc;
    }
    if (name == "saturated_one_runway") {
        // Single-runway day: four fog closures of the runway under light
        // morning demand, a midday unsaturated stretch, and an evening
        // rush that pushes the TRACON past the knee.
        sc.config.horizon_slots = kSlotsPerDay;
        sc.config.n_runways = 2;
        sc.schedule.open.resize(2);
        sc.schedule.open[0] = {{0, 520},    {590, 800},  {870, 1080},
                               {1150, 1360}, {1430, 2880}};
        sc.schedule.open[1] = {};
        DemandProfile profile;
        profile.segments = {{0, 6.0}, {360, 8.0}, {1700, 18.0}, {1978, 8.0}, {2820, 0.0}};
        sc.demand = gen_demand(profile, sc.config.horizon_slots, rng);
        // midday rush: a scheduled bank of one arrival per slot on top of
        // the light background, pushing the TRACON past the knee
        for (long slot = 1560; slot < 1573; ++slot) sc.demand.entries[slot] += 1;
        return sc;
    }
    if (name == "fog_day_runway_closure") {
        // Runway 2 opens at midday; sustained demand slightly above
        // single-runway capacity, so rerouting builds up and then drops.
        sc.config.horizon_slots = kSlotsPerDay;
        sc.config.n_runways = 2;
        sc.schedule.open.resize(2);
        sc.schedule.open[0] = {{0, 2880}};
        sc.schedule.open[1] = {{1440, 2880}};
        DemandProfile profile;
        profile.segments = {{0, 33.0}, {2520, 12.0}, {2820, 0.0}};
        sc.demand = gen_demand(profile, sc.config.horizon_slots, rng);
        return sc;
    }
    if (name == "two_runway_peak") {
        // Two days, both runways, afternoon peaks near the two-runway
        // capacity.
        sc.config.horizon_slots = 2 * kSlotsPerDay;
        sc.config.n_runways = 2;
        sc.schedule = RunwaySchedule::always_open(2, sc.config.horizon_slots);
        DemandProfile profile;
        std::vector<std::pair<long, double>> day = {
            {0, 12.0}, {720, 30.0}, {1560, 52.0}, {1800, 30.0}, {2520, 15.0}};
        for (int d = 0; d < 2; ++d) {
            for (const auto& [from, rate] : day) {
                profile.segments.emplace_back(from + d * kSlotsPerDay, rate);
            }
        }
        profile.segments.emplace_back(sc.config.horizon_slots - 60, 0.0);
        sc.demand = gen_demand(profile, sc.config.horizon_slots, rng);
        return sc;
    }
    throw InvalidInput("unknown scenario preset '" + name + "'");
}

} // namespace tracon
