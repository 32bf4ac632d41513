// tracon — command-line front end for the arrival-flow toolkit.
//
// Subcommands: classify, analyze, calibrate, simulate, sweep, generate,
// plus rerun, which replays a previously written manifest bit-identically.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracon/admission.hpp"
#include "tracon/csv_io.hpp"
#include "tracon/error.hpp"
#include "tracon/flow.hpp"
#include "tracon/geometry.hpp"
#include "tracon/manifest.hpp"
#include "tracon/sim.hpp"
#include "tracon/svg.hpp"
#include "tracon/synthetic.hpp"
#include "tracon/travel_time.hpp"

namespace fs = std::filesystem;
using namespace tracon;

namespace {

std::string abs_str(const fs::path& p) { return fs::absolute(p).lexically_normal().string(); }

struct OutputSet {
    fs::path out_dir;
    bool svg = false;

    fs::path file(const std::string& name) const { return out_dir / name; }
};

void finish_manifest(io::RunManifest& m, const OutputSet& out) {
    m.params["out_dir"] = abs_str(out.out_dir);
    m.params["format"] = out.svg ? "csv+svg" : "csv";
    const fs::path path = out.file(m.subcommand + ".manifest");
    m.outputs["manifest"] = abs_str(path);
    io::write_manifest(path, m);
}

ClassifierParams classifier_params_from(const std::map<std::string, std::string>& p) {
    ClassifierParams c;
    if (p.count("resample_dt")) c.resample_dt_s = io::parse_double(p.at("resample_dt"), "manifest");
    if (p.count("ratio_threshold"))
        c.excess_path_ratio_threshold = io::parse_double(p.at("ratio_threshold"), "manifest");
    if (p.count("net_turn_threshold"))
        c.net_turn_threshold_deg = io::parse_double(p.at("net_turn_threshold"), "manifest");
    if (p.count("loop_winding_threshold"))
        c.loop_winding_threshold_deg = io::parse_double(p.at("loop_winding_threshold"), "manifest");
    if (p.count("smoothing_window"))
        c.smoothing_window = static_cast<int>(io::parse_long(p.at("smoothing_window"), "manifest"));
    return c;
}

void run_classify(const fs::path& tracks_csv, const ClassifierParams& params,
                  const OutputSet& out) {
    const auto tracks = io::read_tracks_csv(tracks_csv);
    std::vector<io::ClassifiedTrack> rows;
    rows.reserve(tracks.size());
    long n_direct = 0;
    for (const auto& track : tracks) {
        const auto [cls, features] = classify_track_features(track, params);
        if (cls.kind == TrackKind::Direct) ++n_direct;
        rows.push_back({track.flight_id, cls, features});
    }
    io::write_classifications_csv(out.file("classifications.csv"), rows);

    io::RunManifest m;
    m.subcommand = "classify";
    m.inputs["tracks"] = abs_str(tracks_csv);
    m.params["resample_dt"] = io::format_double(params.resample_dt_s);
    m.params["ratio_threshold"] = io::format_double(params.excess_path_ratio_threshold);
    m.params["net_turn_threshold"] = io::format_double(params.net_turn_threshold_deg);
    m.params["loop_winding_threshold"] = io::format_double(params.loop_winding_threshold_deg);
    m.params["smoothing_window"] = std::to_string(params.smoothing_window);
    m.outputs["classifications"] = abs_str(out.file("classifications.csv"));
    finish_manifest(m, out);

    std::cout << "classified " << tracks.size() << " tracks: " << n_direct << " direct, "
              << (static_cast<long>(tracks.size()) - n_direct) << " rerouted\n";
}

void run_analyze(const fs::path& records_csv, const AnalysisParams& params,
                 const OutputSet& out) {
    const auto records = io::read_flight_records_csv(records_csv);
    const auto periods = time_based_counts(records, params);
    const auto metrics = aircraft_based_metrics(records, params);
    const auto profile = occupancy_profile(metrics);

    io::write_period_counts_csv(out.file("period_counts.csv"), periods, params.period_s);
    io::write_occupancy_csv(out.file("occupancy.csv"), profile);
    if (out.svg) io::write_period_chart_svg(out.file("periods.svg"), periods);

    io::RunManifest m;
    m.subcommand = "analyze";
    m.inputs["records"] = abs_str(records_csv);
    m.params["period"] = io::format_double(params.period_s);
    m.params["window"] = io::format_double(params.window_T_s);
    m.params["one_runway_share"] = io::format_double(params.one_runway_share);
    m.outputs["period_counts"] = abs_str(out.file("period_counts.csv"));
    m.outputs["occupancy"] = abs_str(out.file("occupancy.csv"));
    if (out.svg) m.outputs["periods_svg"] = abs_str(out.file("periods.svg"));
    finish_manifest(m, out);

    std::cout << "analyzed " << records.size() << " flights: " << periods.size()
              << " periods, " << profile.bins.size() << " occupancy bins\n";
}

void run_calibrate(const fs::path& records_csv, const OutputSet& out) {
    const auto records = io::read_flight_records_csv(records_csv);
    const auto dist = fit_from_direct_tracks(records);
    io::write_distribution_csv(out.file("distribution.csv"), dist);

    io::RunManifest m;
    m.subcommand = "calibrate";
    m.inputs["records"] = abs_str(records_csv);
    m.outputs["distribution"] = abs_str(out.file("distribution.csv"));
    finish_manifest(m, out);

    char mean[32];
    std::snprintf(mean, sizeof(mean), "%.2f", dist.mean_slots());
    std::cout << "calibrated travel times over " << dist.probabilities().size()
              << " support slots, mean " << mean << " slots\n";
}

void run_simulate(const fs::path& config_path, const OutputSet& out) {
    const auto sc = io::read_scenario_config(config_path);
    const auto scenario = io::load_scenario(sc);
    const auto output = run(scenario.config, scenario.demand, scenario.schedule, scenario.dist);

    io::write_planes_csv(out.file("planes.csv"), output.planes);
    io::write_slots_csv(out.file("slots.csv"), output.slots, scenario.config.n_runways);
    const auto bridged = to_flight_records(output);
    io::write_flight_records_csv(out.file("records.csv"), bridged.records);

    io::RunManifest m;
    m.subcommand = "simulate";
    m.inputs["scenario"] = abs_str(config_path);
    m.params["seed"] = std::to_string(scenario.config.seed);
    m.outputs["planes"] = abs_str(out.file("planes.csv"));
    m.outputs["slots"] = abs_str(out.file("slots.csv"));
    m.outputs["records"] = abs_str(out.file("records.csv"));
    finish_manifest(m, out);

    std::cout << "simulated " << scenario.config.horizon_slots << " slots: "
              << output.planes.size() << " planes, " << output.n_unlanded() << " unlanded\n";
}

std::vector<CapConfig> parse_caps(const std::string& caps_arg) {
    std::vector<CapConfig> caps;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (cur == "inf") {
            caps.push_back({std::nullopt});
        } else {
            const long v = io::parse_long(cur, "--caps");
            if (v < 1) throw InvalidInput("--caps values must be >= 1 or 'inf'");
            caps.push_back({v});
        }
        cur.clear();
    };
    for (const char c : caps_arg) {
        if (c == ',') {
            flush();
        } else {
            cur.push_back(c);
        }
    }
    flush();
    if (caps.empty()) throw InvalidInput("--caps requires at least one value");
    return caps;
}

void run_sweep(const fs::path& config_path, const std::string& caps_arg, const OutputSet& out) {
    const auto sc = io::read_scenario_config(config_path);
    const auto scenario = io::load_scenario(sc);
    const auto caps = parse_caps(caps_arg);
    const auto rows = sweep_caps(scenario.config, caps, scenario.demand, scenario.schedule,
                                 scenario.dist);

    io::write_sweep_csv(out.file("sweep.csv"), rows);
    if (out.svg) io::write_sweep_chart_svg(out.file("sweep.svg"), rows);

    io::RunManifest m;
    m.subcommand = "sweep";
    m.inputs["scenario"] = abs_str(config_path);
    m.params["caps"] = caps_arg;
    m.params["seed"] = std::to_string(scenario.config.seed);
    m.outputs["sweep"] = abs_str(out.file("sweep.csv"));
    if (out.svg) m.outputs["sweep_svg"] = abs_str(out.file("sweep.svg"));
    finish_manifest(m, out);

    std::cout << "swept " << rows.size() << " caps over " << scenario.config.horizon_slots
              << " slots\n";
}

void run_generate_preset(const std::string& preset, std::uint64_t seed, const OutputSet& out) {
    Rng rng(seed);
    const auto scenario = gen_scenario(preset, rng);

    io::write_demand_csv(out.file("demand.csv"), scenario.demand);
    io::write_schedule_csv(out.file("schedule.csv"), scenario.schedule);
    io::write_distribution_csv(out.file("distribution.csv"), scenario.dist);

    io::ScenarioConfig sc;
    sc.config = scenario.config;
    sc.demand_file = out.file("demand.csv");
    sc.distribution_file = out.file("distribution.csv");
    sc.schedule_file = out.file("schedule.csv");
    io::write_scenario_config(out.file("scenario.cfg"), sc);

    io::RunManifest m;
    m.subcommand = "generate";
    m.params["preset"] = preset;
    m.params["seed"] = std::to_string(seed);
    m.outputs["demand"] = abs_str(out.file("demand.csv"));
    m.outputs["schedule"] = abs_str(out.file("schedule.csv"));
    m.outputs["distribution"] = abs_str(out.file("distribution.csv"));
    m.outputs["scenario"] = abs_str(out.file("scenario.cfg"));
    finish_manifest(m, out);

    std::cout << "generated preset '" << preset << "': " << scenario.demand.total()
              << " arrivals over " << scenario.config.horizon_slots << " slots\n";
}

void run_generate_tracks(int count, double noise_sd, std::uint64_t seed, const OutputSet& out) {
    Rng rng(seed);
    const auto corpus = gen_track_corpus(count, noise_sd, rng);

    std::vector<Track> tracks;
    tracks.reserve(corpus.size());
    for (const auto& lt : corpus) tracks.push_back(lt.track);
    io::write_tracks_csv(out.file("tracks.csv"), tracks);

    std::ofstream labels(out.file("labels.csv"), std::ios::binary);
    labels << "flight_id,kind,detail\n";
    for (const auto& lt : corpus) {
        labels << lt.track.flight_id << ',' << to_string(lt.label.kind) << ','
               << (lt.label.detail ? to_string(*lt.label.detail) : std::string()) << '\n';
    }
    labels.close();

    io::RunManifest m;
    m.subcommand = "generate";
    m.params["tracks"] = std::to_string(count);
    m.params["noise_sd"] = io::format_double(noise_sd);
    m.params["seed"] = std::to_string(seed);
    m.outputs["tracks"] = abs_str(out.file("tracks.csv"));
    m.outputs["labels"] = abs_str(out.file("labels.csv"));
    finish_manifest(m, out);

    std::cout << "generated " << corpus.size() << " labeled tracks (noise "
              << io::format_double(noise_sd) << " NM)\n";
}

void run_from_manifest(const fs::path& manifest_path) {
    const auto m = io::read_manifest(manifest_path);
    OutputSet out;
    if (!m.params.count("out_dir")) throw ParseError("manifest has no out_dir parameter");
    out.out_dir = m.params.at("out_dir");
    out.svg = m.params.count("format") && m.params.at("format") == "csv+svg";
    fs::create_directories(out.out_dir);

    if (m.subcommand == "classify") {
        run_classify(m.inputs.at("tracks"), classifier_params_from(m.params), out);
    } else if (m.subcommand == "analyze") {
        AnalysisParams p;
        p.period_s = io::parse_double(m.params.at("period"), "manifest");
        p.window_T_s = io::parse_double(m.params.at("window"), "manifest");
        p.one_runway_share = io::parse_double(m.params.at("one_runway_share"), "manifest");
        run_analyze(m.inputs.at("records"), p, out);
    } else if (m.subcommand == "calibrate") {
        run_calibrate(m.inputs.at("records"), out);
    } else if (m.subcommand == "simulate") {
        run_simulate(m.inputs.at("scenario"), out);
    } else if (m.subcommand == "sweep") {
        run_sweep(m.inputs.at("scenario"), m.params.at("caps"), out);
    } else if (m.subcommand == "generate") {
        const auto seed = io::parse_u64(m.params.at("seed"), "manifest");
        if (m.params.count("preset")) {
            run_generate_preset(m.params.at("preset"), seed, out);
        } else {
            run_generate_tracks(static_cast<int>(io::parse_long(m.params.at("tracks"), "manifest")),
                                io::parse_double(m.params.at("noise_sd"), "manifest"), seed, out);
        }
    } else {
        throw ParseError("manifest names unknown subcommand '" + m.subcommand + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TRACON arrival-flow toolkit: track classification, flow analysis,\n"
                 "discrete-time landing simulation and admission-control experiments"};
    app.require_subcommand(1);
    app.fallthrough(); // let --seed/--out-dir/--format appear after the subcommand

    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "csv";
    app.add_option("--seed", seed, "seed for randomized subcommands")->capture_default_str();
    app.add_option("--out-dir", out_dir, "directory for output files")->capture_default_str();
    app.add_option("--format", format, "csv or csv+svg")
        ->check(CLI::IsMember({"csv", "csv+svg"}))
        ->capture_default_str();

    // classify
    auto* classify = app.add_subcommand("classify", "classify tracks as direct or rerouted");
    std::string tracks_csv;
    ClassifierParams cls_params;
    classify->add_option("tracks", tracks_csv, "track CSV (flight_id,t,x,y)")->required();
    classify->add_option("--resample-dt", cls_params.resample_dt_s, "resample step, seconds")
        ->capture_default_str();
    classify->add_option("--ratio-threshold", cls_params.excess_path_ratio_threshold,
                         "excess path ratio threshold")->capture_default_str();
    classify->add_option("--net-turn-threshold", cls_params.net_turn_threshold_deg,
                         "winding threshold, degrees")->capture_default_str();
    classify->add_option("--loop-winding-threshold", cls_params.loop_winding_threshold_deg,
                         "hippodrome winding threshold, degrees")->capture_default_str();
    classify->add_option("--smoothing-window", cls_params.smoothing_window,
                         "heading moving-average window, samples")->capture_default_str();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run both flow-analysis methodologies");
    std::string records_csv;
    AnalysisParams ana_params;
    analyze->add_option("records", records_csv, "flight record CSV")->required();
    analyze->add_option("--period", ana_params.period_s, "time-based period, seconds")
        ->capture_default_str();
    analyze->add_option("--window", ana_params.window_T_s, "aircraft-based window T, seconds")
        ->capture_default_str();
    analyze->add_option("--one-runway-share", ana_params.one_runway_share,
                        "landing share above which one runway is deemed in use")
        ->capture_default_str();

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate",
                                         "fit the travel-time law from direct flights");
    std::string cal_records_csv;
    calibrate->add_option("records", cal_records_csv, "flight record CSV")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run the discrete-time landing model");
    std::string scenario_cfg;
    simulate->add_option("scenario", scenario_cfg, "scenario config (key=value)")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "capped-TRACON decongestion sweep");
    std::string sweep_cfg;
    std::string caps_arg = "6,7,8,9,10,11,12,inf";
    sweep->add_option("scenario", sweep_cfg, "scenario config (key=value)")->required();
    sweep->add_option("--caps", caps_arg, "comma-separated caps (integers or 'inf')")
        ->capture_default_str();

    // generate
    auto* generate = app.add_subcommand("generate", "emit synthetic scenarios or track corpora");
    std::string preset;
    int tracks_count = 0;
    double noise_sd = 0.2;
    auto* preset_opt = generate->add_option("--preset", preset, "scenario preset name")
                           ->check(CLI::IsMember(scenario_preset_names()));
    auto* tracks_opt = generate->add_option("--tracks", tracks_count,
                                            "generate a labeled track corpus of this size");
    generate->add_option("--noise-sd", noise_sd, "track position noise, NM")
        ->capture_default_str();
    preset_opt->excludes(tracks_opt);

    // rerun
    auto* rerun = app.add_subcommand("rerun", "replay a previously written manifest");
    std::string manifest_path;
    rerun->add_option("manifest", manifest_path, "manifest file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        OutputSet out;
        out.out_dir = out_dir;
        out.svg = format == "csv+svg";
        fs::create_directories(out.out_dir);

        if (classify->parsed()) {
            run_classify(tracks_csv, cls_params, out);
        } else if (analyze->parsed()) {
            run_analyze(records_csv, ana_params, out);
        } else if (calibrate->parsed()) {
            run_calibrate(cal_records_csv, out);
        } else if (simulate->parsed()) {
            run_simulate(scenario_cfg, out);
        } else if (sweep->parsed()) {
            run_sweep(sweep_cfg, caps_arg, out);
        } else if (generate->parsed()) {
            if (!preset.empty()) {
                run_generate_preset(preset, seed, out);
            } else if (tracks_count > 0) {
                run_generate_tracks(tracks_count, noise_sd, seed, out);
            } else {
                throw InvalidInput("generate requires --preset or --tracks");
            }
        } else if (rerun->parsed()) {
            run_from_manifest(manifest_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
