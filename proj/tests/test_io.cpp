#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tracon/csv_io.hpp"
#include "tracon/error.hpp"
#include "tracon/manifest.hpp"
#include "tracon/rng.hpp"
#include "tracon/svg.hpp"
#include "tracon/synthetic.hpp"

using namespace tracon;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "tracon_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("track CSV round-trips") {
    const auto dir = temp_dir();
    Rng rng(3);
    auto corpus = gen_track_corpus(12, 0.15, rng);
    std::vector<Track> tracks;
    for (auto& lt : corpus) tracks.push_back(lt.track);

    const auto path = dir / "tracks.csv";
    io::write_tracks_csv(path, tracks);
    const auto back = io::read_tracks_csv(path);
    REQUIRE(back.size() == tracks.size());
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        CHECK(back[i].flight_id == tracks[i].flight_id);
        REQUIRE(back[i].points.size() == tracks[i].points.size());
        for (std::size_t j = 0; j < tracks[i].points.size(); ++j) {
            CHECK(back[i].points[j].t == tracks[i].points[j].t); // exact, not approximate
            CHECK(back[i].points[j].x == tracks[i].points[j].x);
            CHECK(back[i].points[j].y == tracks[i].points[j].y);
        }
    }

    // second write is byte-identical
    const auto path2 = dir / "tracks2.csv";
    io::write_tracks_csv(path2, back);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("track CSV errors carry line numbers") {
    const auto dir = temp_dir();
    const auto path = dir / "bad_tracks.csv";

    SUBCASE("bad number") {
        spit(path, "flight_id,t,x,y\nA,0,0,0\nA,ten,1,1\n");
        try {
            io::read_tracks_csv(path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":3") != std::string::npos);
        }
    }
    SUBCASE("non-contiguous flight rows") {
        spit(path, "flight_id,t,x,y\nA,0,0,0\nB,0,1,1\nA,10,2,2\n");
        CHECK_THROWS_AS(io::read_tracks_csv(path), ParseError);
    }
    SUBCASE("non-monotone timestamps") {
        spit(path, "flight_id,t,x,y\nA,10,0,0\nA,5,1,1\n");
        CHECK_THROWS_AS(io::read_tracks_csv(path), ParseError);
    }
    SUBCASE("wrong header") {
        spit(path, "id,t,x,y\nA,0,0,0\n");
        CHECK_THROWS_AS(io::read_tracks_csv(path), ParseError);
    }
    SUBCASE("empty file with header parses to nothing") {
        spit(path, "flight_id,t,x,y\n");
        CHECK(io::read_tracks_csv(path).empty());
    }
}

TEST_CASE("classification CSV round-trips") {
    const auto dir = temp_dir();
    const auto path = dir / "classifications.csv";
    std::vector<io::ClassifiedTrack> rows = {
        {"A", direct_class(), {1.02, -11.5, 24.0}},
        {"B", rerouted_class(ReroutedDetail::STurn), {1.21, 3.25, 241.0}},
        {"C", rerouted_class(ReroutedDetail::Hippodrome), {1.9, -719.0, 744.5}},
        {"D", rerouted_class(ReroutedDetail::Other), {1.45, 88.0, 120.0}},
    };
    io::write_classifications_csv(path, rows);
    const auto back = io::read_classifications_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].flight_id == rows[i].flight_id);
        CHECK(back[i].classification == rows[i].classification);
        CHECK(back[i].features.excess_ratio == rows[i].features.excess_ratio);
        CHECK(back[i].features.net_turn_deg == rows[i].features.net_turn_deg);
        CHECK(back[i].features.total_winding_deg == rows[i].features.total_winding_deg);
    }

    // detail present iff rerouted is enforced on read
    spit(path, "flight_id,kind,detail,excess_ratio,net_turn,total_winding\nX,direct,s_turn,1,0,0\n");
    CHECK_THROWS_AS(io::read_classifications_csv(path), ParseError);
}

TEST_CASE("flight record CSV round-trips and validates") {
    const auto dir = temp_dir();
    const auto path = dir / "records.csv";
    std::vector<FlightRecord> records;
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        FlightRecord r;
        r.flight_id = "F" + std::to_string(i);
        r.entry_t = std::floor(rng.uniform(0.0, 5000.0));
        r.landing_t = r.entry_t + std::floor(rng.uniform(300.0, 2000.0));
        r.runway = rng.next_double() < 0.5 ? "R1" : "R2";
        r.classification = rng.next_double() < 0.4 ? rerouted_class(ReroutedDetail::Other)
                                                   : direct_class();
        records.push_back(r);
    }
    io::write_flight_records_csv(path, records);
    const auto back = io::read_flight_records_csv(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].flight_id == records[i].flight_id);
        CHECK(back[i].entry_t == records[i].entry_t);
        CHECK(back[i].landing_t == records[i].landing_t);
        CHECK(back[i].runway == records[i].runway);
        CHECK(back[i].classification.kind == records[i].classification.kind);
    }

    spit(path, "flight_id,entry_t,landing_t,runway,kind\nBAD,100,50,R1,direct\n");
    try {
        io::read_flight_records_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("BAD") != std::string::npos);
    }
}

TEST_CASE("distribution CSV round-trips exactly and re-validates") {
    const auto dir = temp_dir();
    const auto path = dir / "dist.csv";
    const auto dist = default_travel_time_distribution();
    io::write_distribution_csv(path, dist);
    const auto back = io::read_distribution_csv(path);
    CHECK(back.probabilities() == dist.probabilities());

    spit(path, "slots,probability\n20,0.4\n40,0.4\n");
    CHECK_THROWS_AS(io::read_distribution_csv(path), ParseError);
}

TEST_CASE("demand and schedule CSVs round-trip") {
    const auto dir = temp_dir();
    Rng rng(9);
    const DemandProfile profile{{{0, 18.0}, {1000, 35.0}}};
    const auto demand = gen_demand(profile, 2880, rng);
    io::write_demand_csv(dir / "demand.csv", demand);
    CHECK(io::read_demand_csv(dir / "demand.csv").entries == demand.entries);

    RunwaySchedule schedule;
    schedule.open.resize(2);
    schedule.open[0] = {{0, 1000}, {1200, 2880}};
    schedule.open[1] = {{500, 2000}};
    io::write_schedule_csv(dir / "schedule.csv", schedule);
    const auto back = io::read_schedule_csv(dir / "schedule.csv", 2);
    REQUIRE(back.open.size() == 2);
    CHECK(back.open[0][0].from == 0);
    CHECK(back.open[0][1].to == 2880);
    CHECK(back.open[1][0].from == 500);

    spit(dir / "schedule.csv", "runway,open_from_slot,open_to_slot\nR9,0,100\n");
    CHECK_THROWS_AS(io::read_schedule_csv(dir / "schedule.csv", 2), ParseError);
}

TEST_CASE("per-plane and per-slot CSVs round-trip, including unlanded planes") {
    const auto dir = temp_dir();
    SimConfig config;
    config.horizon_slots = 40;
    RunwaySchedule schedule;
    schedule.open.resize(2);
    schedule.open[0] = {{0, 10}};
    const auto out = run_planned(config, {{0, 5}, {0, 20}}, schedule);
    REQUIRE(out.n_unlanded() == 1);

    io::write_planes_csv(dir / "planes.csv", out.planes);
    const auto planes = io::read_planes_csv(dir / "planes.csv");
    REQUIRE(planes.size() == out.planes.size());
    CHECK(planes == out.planes);

    io::write_slots_csv(dir / "slots.csv", out.slots, 2);
    const auto slots = io::read_slots_csv(dir / "slots.csv");
    CHECK(slots == out.slots);
}

TEST_CASE("scenario config parses key=value with relative paths") {
    const auto dir = temp_dir();
    Rng rng(31);
    const auto sc = gen_scenario("quiet_day", rng);
    io::write_demand_csv(dir / "demand.csv", sc.demand);
    io::write_schedule_csv(dir / "schedule.csv", sc.schedule);
    io::write_distribution_csv(dir / "distribution.csv", sc.dist);

    io::ScenarioConfig cfg;
    cfg.config = sc.config;
    cfg.demand_file = dir / "demand.csv";
    cfg.distribution_file = dir / "distribution.csv";
    cfg.schedule_file = dir / "schedule.csv";
    io::write_scenario_config(dir / "scenario.cfg", cfg);

    const auto parsed = io::read_scenario_config(dir / "scenario.cfg");
    CHECK(parsed.config.horizon_slots == sc.config.horizon_slots);
    CHECK(parsed.config.seed == sc.config.seed);
    const auto loaded = io::load_scenario(parsed);
    CHECK(loaded.demand.entries == sc.demand.entries);

    SUBCASE("unknown keys are named") {
        spit(dir / "bad.cfg", "horizon_slots=100\nseed=1\nbogus=1\n");
        try {
            io::read_scenario_config(dir / "bad.cfg");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("bogus") != std::string::npos);
        }
    }
    SUBCASE("missing files are reported") {
        spit(dir / "missing.cfg",
             "horizon_slots=100\nseed=1\ndistribution_file=nope.csv\n"
             "demand_file=nope2.csv\nschedule_file=nope3.csv\n");
        const auto cfg2 = io::read_scenario_config(dir / "missing.cfg");
        CHECK_THROWS_AS(io::load_scenario(cfg2), ParseError);
    }
}

TEST_CASE("per-slot CSV has one row per slot over a two-day horizon") {
    const auto dir = temp_dir();
    const std::vector<SlotStats> slots(5760);
    io::write_slots_csv(dir / "two_days.csv", slots, 2);
    const auto content = slurp(dir / "two_days.csv");
    const auto rows = std::count(content.begin(), content.end(), '\n');
    CHECK(rows == 5761); // header + 2880 slots per day
}

TEST_CASE("SVG charts are structurally sound and deterministic") {
    const auto dir = temp_dir();

    std::vector<SweepRow> rows;
    for (long c = 6; c <= 8; ++c) {
        SweepRow r;
        r.cap = {c};
        r.report.mean_rerouting_s = 30.0 * static_cast<double>(c);
        r.report.mean_waiting_s = 500.0 - 40.0 * static_cast<double>(c);
        rows.push_back(r);
    }
    io::write_sweep_chart_svg(dir / "sweep.svg", rows);
    const auto svg = slurp(dir / "sweep.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    // one dark and one light bar per cap
    std::size_t rects = 0;
    for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
         pos = svg.find("<rect", pos + 1)) {
        ++rects;
    }
    CHECK(rects == rows.size() * 2);

    io::write_sweep_chart_svg(dir / "sweep2.svg", rows);
    CHECK(slurp(dir / "sweep.svg") == slurp(dir / "sweep2.svg"));

    const std::vector<PeriodCounts> counts = {{0, 5, 2, 1, 1, 1}, {1, 3, 1, 2, 0, 2}};
    io::write_period_chart_svg(dir / "periods.svg", counts);
    const auto psvg = slurp(dir / "periods.svg");
    CHECK(psvg.rfind("<svg", 0) == 0);
    CHECK(psvg.find("</svg>") != std::string::npos);
}

TEST_CASE("manifest round-trips") {
    const auto dir = temp_dir();
    io::RunManifest m;
    m.subcommand = "simulate";
    m.params["seed"] = "42";
    m.params["out_dir"] = "/tmp/x";
    m.inputs["scenario"] = "/tmp/x/scenario.cfg";
    m.outputs["planes"] = "/tmp/x/planes.csv";
    io::write_manifest(dir / "run.manifest", m);
    const auto back = io::read_manifest(dir / "run.manifest");
    CHECK(back == m);

    // writing the parsed manifest again is byte-identical
    io::write_manifest(dir / "run2.manifest", back);
    CHECK(slurp(dir / "run.manifest") == slurp(dir / "run2.manifest"));
}

TEST_CASE("format_double round-trips doubles exactly") {
    Rng rng(77);
    for (int i = 0; i < 2000; ++i) {
        const double v = (rng.next_double() - 0.5) * std::pow(10.0, rng.next_int(-6, 8));
        CHECK(io::parse_double(io::format_double(v), "test") == v);
    }
}
