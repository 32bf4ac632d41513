#include "tracon/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <system_error>

#include "tracon/error.hpp"

namespace tracon::io {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

struct CsvFile {
    std::filesystem::path path;
    std::vector<std::string> header;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows; // (line_no, fields)
};

CsvFile read_csv(const std::filesystem::path& path, const std::string& expected_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    CsvFile file;
    file.path = path;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(location(path, 1) + ": missing header row");
    }
    ++line_no;
    file.header = split_fields(line);
    const auto expected = split_fields(expected_header);
    if (file.header != expected) {
        throw ParseError(location(path, 1) + ": expected header '" + expected_header + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_fields(line);
        if (fields.size() != expected.size()) {
            throw ParseError(location(path, line_no) + ": expected " +
                             std::to_string(expected.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        file.rows.emplace_back(line_no, std::move(fields));
    }
    return file;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": bad number '" + s + "'");
    }
    return value;
}

long parse_long(const std::string& s, const std::string& context) {
    long value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": bad integer '" + s + "'");
    }
    return value;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
    std::uint64_t value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": bad unsigned integer '" + s + "'");
    }
    return value;
}

std::vector<Track> read_tracks_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path, "flight_id,t,x,y");
    std::vector<Track> tracks;
    std::vector<std::string> seen;
    for (const auto& [line_no, f] : file.rows) {
        const std::string& id = f[0];
        if (id.empty()) throw ParseError(location(path, line_no) + ": empty flight_id");
        if (tracks.empty() || tracks.back().flight_id != id) {
            if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
                throw ParseError(location(path, line_no) + ": rows for flight '" + id +
                                 "' are not contiguous");
            }
            seen.push_back(id);
            tracks.push_back(Track{id, {}, std::nullopt});
        }
        TrackPoint p;
        p.t = parse_double(f[1], location(path, line_no));
        p.x = parse_double(f[2], location(path, line_no));
        p.y = parse_double(f[3], location(path, line_no));
        if (!tracks.back().points.empty() && p.t <= tracks.back().points.back().t) {
            throw ParseError(location(path, line_no) + ": flight '" + id +
                             "' timestamps are not strictly increasing");
        }
        tracks.back().points.push_back(p);
    }
    return tracks;
}

void write_tracks_csv(const std::filesystem::path& path, const std::vector<Track>& tracks) {
    auto out = open_out(path);
    out << "flight_id,t,x,y\n";
    for (const auto& track : tracks) {
        for (const auto& p : track.points) {
            out << track.flight_id << ',' << format_double(p.t) << ','
                << format_double(p.x) << ',' << format_double(p.y) << '\n';
        }
    }
}

void write_classifications_csv(const std::filesystem::path& path,
                               const std::vector<ClassifiedTrack>& rows) {
    auto out = open_out(path);
    out << "flight_id,kind,detail,excess_ratio,net_turn,total_winding\n";
    for (const auto& r : rows) {
        out << r.flight_id << ',' << to_string(r.classification.kind) << ','
            << (r.classification.detail ? to_string(*r.classification.detail) : std::string())
            << ',' << format_double(r.features.excess_ratio) << ','
            << format_double(r.features.net_turn_deg) << ','
            << format_double(r.features.total_winding_deg) << '\n';
    }
}

std::vector<ClassifiedTrack> read_classifications_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path, "flight_id,kind,detail,excess_ratio,net_turn,total_winding");
    std::vector<ClassifiedTrack> rows;
    for (const auto& [line_no, f] : file.rows) {
        ClassifiedTrack r;
        r.flight_id = f[0];
        r.classification.kind = track_kind_from_string(f[1]);
        if (!f[2].empty()) r.classification.detail = rerouted_detail_from_string(f[2]);
        if ((r.classification.kind == TrackKind::Rerouted) != r.classification.detail.has_value()) {
            throw ParseError(location(path, line_no) + ": detail must be present iff rerouted");
        }
        r.features.excess_ratio = parse_double(f[3], location(path, line_no));
        r.features.net_turn_deg = parse_double(f[4], location(path, line_no));
        r.features.total_winding_deg = parse_double(f[5], location(path, line_no));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<FlightRecord> read_flight_records_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path, "flight_id,entry_t,landing_t,runway,kind");
    std::vector<FlightRecord> records;
    for (const auto& [line_no, f] : file.rows) {
        FlightRecord r;
        r.flight_id = f[0];
        r.entry_t = parse_double(f[1], location(path, line_no));
        r.landing_t = parse_double(f[2], location(path, line_no));
        r.runway = f[3];
        r.classification = track_kind_from_string(f[4]) == TrackKind::Direct
                               ? direct_class()
                               : rerouted_class(ReroutedDetail::Other);
        if (r.landing_t <= r.entry_t) {
            throw ParseError(location(path, line_no) + ": flight '" + r.flight_id +
                             "' lands at or before its entry");
        }
        records.push_back(std::move(r));
    }
    return records;
}

void write_flight_records_csv(const std::filesystem::path& path,
                              const std::vector<FlightRecord>& records) {
    auto out = open_out(path);
    out << "flight_id,entry_t,landing_t,runway,kind\n";
    for (const auto& r : records) {
        out << r.flight_id << ',' << format_double(r.entry_t) << ','
            << format_double(r.landing_t) << ',' << r.runway << ','
            << to_string(r.classification.kind) << '\n';
    }
}

void write_period_counts_csv(const std::filesystem::path& path,
                             const std::vector<PeriodCounts>& counts, double period_s) {
    auto out = open_out(path);
    out << "period_index,period_start_s,present,entering,landing,rerouted,runways_in_use\n";
    for (const auto& c : counts) {
        out << c.period_index << ',' << format_double(c.period_index * period_s) << ','
            << c.present << ',' << c.entering << ',' << c.landing << ',' << c.rerouted << ','
            << c.runways_in_use << '\n';
    }
}

std::vector<PeriodCounts> read_period_counts_csv(const std::filesystem::path& path) {
    const auto file = read_csv(
        path, "period_index,period_start_s,present,entering,landing,rerouted,runways_in_use");
    std::vector<PeriodCounts> counts;
    for (const auto& [line_no, f] : file.rows) {
        PeriodCounts c;
        const auto ctx = location(path, line_no);
        c.period_index = parse_long(f[0], ctx);
        c.present = static_cast<int>(parse_long(f[2], ctx));
        c.entering = static_cast<int>(parse_long(f[3], ctx));
        c.landing = static_cast<int>(parse_long(f[4], ctx));
        c.rerouted = static_cast<int>(parse_long(f[5], ctx));
        c.runways_in_use = static_cast<int>(parse_long(f[6], ctx));
        counts.push_back(c);
    }
    return counts;
}

void write_occupancy_csv(const std::filesystem::path& path, const OccupancyProfile& profile) {
    auto out = open_out(path);
    out << "n_present,runways_in_use,mean_entering_flow,std_entering_flow,"
           "mean_landing_flow,std_landing_flow,mean_rerouted,frequency\n";
    for (const auto& b : profile.bins) {
        out << b.n_present << ',' << b.runways_in_use << ','
            << format_double(b.mean_entering_flow) << ',' << format_double(b.std_entering_flow)
            << ',' << format_double(b.mean_landing_flow) << ','
            << format_double(b.std_landing_flow) << ',' << format_double(b.mean_rerouted) << ','
            << b.frequency << '\n';
    }
}

OccupancyProfile read_occupancy_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path,
                               "n_present,runways_in_use,mean_entering_flow,std_entering_flow,"
                               "mean_landing_flow,std_landing_flow,mean_rerouted,frequency");
    OccupancyProfile profile;
    for (const auto& [line_no, f] : file.rows) {
        const auto ctx = location(path, line_no);
        OccupancyBin b;
        b.n_present = static_cast<int>(parse_long(f[0], ctx));
        b.runways_in_use = static_cast<int>(parse_long(f[1], ctx));
        b.mean_entering_flow = parse_double(f[2], ctx);
        b.std_entering_flow = parse_double(f[3], ctx);
        b.mean_landing_flow = parse_double(f[4], ctx);
        b.std_landing_flow = parse_double(f[5], ctx);
        b.mean_rerouted = parse_double(f[6], ctx);
        b.frequency = parse_long(f[7], ctx);
        profile.bins.push_back(b);
    }
    return profile;
}

void write_distribution_csv(const std::filesystem::path& path,
                            const TravelTimeDistribution& dist) {
    auto out = open_out(path);
    out << "slots,probability\n";
    for (const auto& [slots, p] : dist.probabilities()) {
        out << slots << ',' << format_double(p) << '\n';
    }
}

TravelTimeDistribution read_distribution_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path, "slots,probability");
    std::map<int, double> probs;
    long prev = 0;
    for (const auto& [line_no, f] : file.rows) {
        const auto ctx = location(path, line_no);
        const long slots = parse_long(f[0], ctx);
        if (slots <= prev) {
            throw ParseError(ctx + ": slots must be strictly increasing");
        }
        prev = slots;
        probs[static_cast<int>(slots)] = parse_double(f[1], ctx);
    }
    try {
        return TravelTimeDistribution(std::move(probs));
    } catch (const InvalidInput& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_demand_csv(const std::filesystem::path& path, const DemandSequence& demand) {
    auto out = open_out(path);
    out << "slot,entries\n";
    for (const auto& [slot, count] : demand.entries) {
        if (count != 0) out << slot << ',' << count << '\n';
    }
}

DemandSequence read_demand_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path, "slot,entries");
    DemandSequence demand;
    for (const auto& [line_no, f] : file.rows) {
        const auto ctx = location(path, line_no);
        const long slot = parse_long(f[0], ctx);
        const long count = parse_long(f[1], ctx);
        if (count < 0) throw ParseError(ctx + ": entries must be >= 0");
        if (count > 0) demand.entries[slot] += static_cast<int>(count);
    }
    return demand;
}

void write_schedule_csv(const std::filesystem::path& path, const RunwaySchedule& schedule) {
    auto out = open_out(path);
    out << "runway,open_from_slot,open_to_slot\n";
    for (std::size_t r = 0; r < schedule.open.size(); ++r) {
        for (const auto& iv : schedule.open[r]) {
            out << 'R' << (r + 1) << ',' << iv.from << ',' << iv.to << '\n';
        }
    }
}

RunwaySchedule read_schedule_csv(const std::filesystem::path& path, int n_runways) {
    const auto file = read_csv(path, "runway,open_from_slot,open_to_slot");
    RunwaySchedule schedule;
    schedule.open.resize(static_cast<std::size_t>(n_runways));
    for (const auto& [line_no, f] : file.rows) {
        const auto ctx = location(path, line_no);
        const std::string& label = f[0];
        if (label.size() < 2 || label[0] != 'R') {
            throw ParseError(ctx + ": runway label must look like R1, R2, ...");
        }
        const long idx = parse_long(label.substr(1), ctx) - 1;
        if (idx < 0 || idx >= n_runways) {
            throw ParseError(ctx + ": runway '" + label + "' outside the configured " +
                             std::to_string(n_runways) + " runways");
        }
        SlotInterval iv;
        iv.from = parse_long(f[1], ctx);
        iv.to = parse_long(f[2], ctx);
        schedule.open[static_cast<std::size_t>(idx)].push_back(iv);
    }
    return schedule;
}

void write_planes_csv(const std::filesystem::path& path, const std::vector<PlaneResult>& planes) {
    auto out = open_out(path);
    out << "plane_id,entry_slot,nominal_slots,nominal_landing_slot,"
           "actual_landing_slot,runway,rerouting_slots\n";
    for (const auto& p : planes) {
        out << p.plane_id << ',' << p.entry_slot << ',' << p.nominal_slots << ','
            << p.nominal_landing_slot << ',';
        if (p.landed()) {
            out << *p.actual_landing_slot << ",R" << (*p.runway + 1) << ','
                << p.rerouting_slots() << '\n';
        } else {
            out << ",,\n";
        }
    }
}

std::vector<PlaneResult> read_planes_csv(const std::filesystem::path& path) {
    const auto file = read_csv(path,
                               "plane_id,entry_slot,nominal_slots,nominal_landing_slot,"
                               "actual_landing_slot,runway,rerouting_slots");
    std::vector<PlaneResult> planes;
    for (const auto& [line_no, f] : file.rows) {
        const auto ctx = location(path, line_no);
        PlaneResult p;
        p.plane_id = parse_long(f[0], ctx);
        p.entry_slot = parse_long(f[1], ctx);
        p.nominal_slots = static_cast<int>(parse_long(f[2], ctx));
        p.nominal_landing_slot = parse_long(f[3], ctx);
        if (!f[4].empty()) {
            p.actual_landing_slot = parse_long(f[4], ctx);
            if (f[5].size() < 2 || f[5][0] != 'R') {
                throw ParseError(ctx + ": bad runway label '" + f[5] + "'");
            }
            p.runway = static_cast<int>(parse_long(f[5].substr(1), ctx)) - 1;
        }
        planes.push_back(p);
    }
    return planes;
}

void write_slots_csv(const std::filesystem::path& path, const std::vector<SlotStats>& slots,
                     int n_runways) {
    auto out = open_out(path);
    out << "slot,n_in_tracon,n_rerouted";
    for (int r = 0; r < n_runways; ++r) out << ",r" << (r + 1) << "_occupied";
    out << '\n';
    for (std::size_t s = 0; s < slots.size(); ++s) {
        out << s << ',' << slots[s].n_in_tracon << ',' << slots[s].n_rerouted;
        for (int r = 0; r < n_runways; ++r) {
            out << ',' << ((slots[s].runway_occupied >> r) & 1u);
        }
        out << '\n';
    }
}

std::vector<SlotStats> read_slots_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(location(path, 1) + ": missing header row");
    const auto header = split_fields(line);
    if (header.size() < 3 || header[0] != "slot" || header[1] != "n_in_tracon" ||
        header[2] != "n_rerouted") {
        throw ParseError(location(path, 1) + ": unexpected per-slot header");
    }
    const std::size_t n_runways = header.size() - 3;
    std::vector<SlotStats> slots;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_fields(line);
        const auto ctx = location(path, line_no);
        if (f.size() != header.size()) throw ParseError(ctx + ": wrong field count");
        SlotStats s;
        s.n_in_tracon = static_cast<int>(parse_long(f[1], ctx));
        s.n_rerouted = static_cast<int>(parse_long(f[2], ctx));
        for (std::size_t r = 0; r < n_runways; ++r) {
            if (parse_long(f[3 + r], ctx) != 0) {
                s.runway_occupied |= static_cast<std::uint8_t>(1u << r);
            }
        }
        slots.push_back(s);
    }
    return slots;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "cap,mean_waiting_s,mean_rerouting_s,percent_delayed,n_planes,n_unlanded\n";
    for (const auto& row : rows) {
        if (row.cap.bounded()) {
            out << *row.cap.max_in_tracon;
        } else {
            out << "inf";
        }
        out << ',' << format_double(row.report.mean_waiting_s) << ','
            << format_double(row.report.mean_rerouting_s) << ','
            << format_double(row.report.percent_delayed) << ',' << row.report.n_planes << ','
            << row.report.n_unlanded << '\n';
    }
}

ScenarioConfig read_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    ScenarioConfig sc;
    bool have_horizon = false, have_seed = false;
    bool have_dist = false, have_demand = false, have_schedule = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(location(path, line_no) + ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto ctx = location(path, line_no);
        auto resolve = [&](const std::string& v) {
            std::filesystem::path p(v);
            return p.is_absolute() ? p : base / p;
        };
        if (key == "horizon_slots") {
            sc.config.horizon_slots = parse_long(value, ctx);
            have_horizon = true;
        } else if (key == "seed") {
            sc.config.seed = parse_u64(value, ctx);
            have_seed = true;
        } else if (key == "n_runways") {
            sc.config.n_runways = static_cast<int>(parse_long(value, ctx));
        } else if (key == "distribution_file") {
            sc.distribution_file = resolve(value);
            have_dist = true;
        } else if (key == "demand_file") {
            sc.demand_file = resolve(value);
            have_demand = true;
        } else if (key == "schedule_file") {
            sc.schedule_file = resolve(value);
            have_schedule = true;
        } else {
            throw ParseError(ctx + ": unknown key '" + key + "'");
        }
    }
    if (!have_horizon) throw ParseError(path.string() + ": missing horizon_slots");
    if (!have_seed) throw ParseError(path.string() + ": missing seed");
    if (!have_dist) throw ParseError(path.string() + ": missing distribution_file");
    if (!have_demand) throw ParseError(path.string() + ": missing demand_file");
    if (!have_schedule) throw ParseError(path.string() + ": missing schedule_file");
    return sc;
}

void write_scenario_config(const std::filesystem::path& path, const ScenarioConfig& sc) {
    auto out = open_out(path);
    out << "demand_file=" << sc.demand_file.filename().string() << '\n'
        << "distribution_file=" << sc.distribution_file.filename().string() << '\n'
        << "horizon_slots=" << sc.config.horizon_slots << '\n'
        << "n_runways=" << sc.config.n_runways << '\n'
        << "schedule_file=" << sc.schedule_file.filename().string() << '\n'
        << "seed=" << sc.config.seed << '\n';
}

Scenario load_scenario(const ScenarioConfig& sc) {
    Scenario scenario;
    scenario.config = sc.config;
    scenario.dist = read_distribution_csv(sc.distribution_file);
    scenario.demand = read_demand_csv(sc.demand_file);
    scenario.schedule = read_schedule_csv(sc.schedule_file, sc.config.n_runways);
    validate_sim_inputs(scenario.config, scenario.demand, scenario.schedule);
    return scenario;
}

} // namespace tracon::io
