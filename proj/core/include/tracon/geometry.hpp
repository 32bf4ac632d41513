#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tracon {

/// Radius of the modeled terminal area in nautical miles.
inline constexpr double kTraconRadiusNm = 50.0;
/// Containment bound for track points (TRACON radius plus margin).
inline constexpr double kTrackBoundNm = 60.0;

/// One radar plot: seconds since scenario epoch and NM offsets east/north
/// of the airport reference point.
struct TrackPoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// Time-ordered 2D trajectory of one arrival.
struct Track {
    std::string flight_id;
    std::vector<TrackPoint> points;
    std::optional<std::string> runway;
};

enum class TrackKind { Direct, Rerouted };

enum class ReroutedDetail { STurn, Hippodrome, Other };

/// Direct vs rerouted verdict; detail present iff rerouted.
struct Classification {
    TrackKind kind = TrackKind::Direct;
    std::optional<ReroutedDetail> detail;

    bool operator==(const Classification&) const = default;
};

inline Classification direct_class() { return {TrackKind::Direct, std::nullopt}; }
inline Classification rerouted_class(ReroutedDetail d) { return {TrackKind::Rerouted, d}; }

/// Knobs of the track classifier. All thresholds strictly positive;
/// loop_winding_threshold_deg >= net_turn_threshold_deg.
struct ClassifierParams {
    double resample_dt_s = 10.0;
    double excess_path_ratio_threshold = 1.3;
    double net_turn_threshold_deg = 150.0;
    double loop_winding_threshold_deg = 540.0;
    int smoothing_window = 5;
};

/// Features the classifier decision is based on; exposed so the CLI can
/// report them per flight.
struct TrackFeatures {
    double excess_ratio = 1.0;
    double net_turn_deg = 0.0;
    double total_winding_deg = 0.0;
};

struct HeadingSample {
    double t = 0.0;
    double heading_deg = 0.0; // compass: 0 = north, 90 = east, in [0, 360)
};

/// Throws InvalidInput if the track has < 2 points, non-increasing
/// timestamps, or points outside the containment bound.
void validate_track(const Track& track);

/// Linear interpolation at times t0, t0+dt, ...; the original first and
/// last points are preserved as endpoints.
Track resample_track(const Track& track, double dt_s);

/// Compass heading of each consecutive displacement. Zero-length
/// displacements are skipped; no unwrapping is applied.
std::vector<HeadingSample> heading_series(const Track& track);

/// net turn = sum of signed smallest-angle heading deltas;
/// total winding = sum of their absolute values. Both in degrees.
std::pair<double, double> cumulative_turn(const std::vector<HeadingSample>& headings);

/// Moving average over the unwrapped heading sequence, re-wrapped to
/// [0, 360). Window is clamped to the series length.
std::vector<HeadingSample> smooth_headings(const std::vector<HeadingSample>& headings,
                                           int window);

/// Polyline arc length over straight-line endpoint distance, >= 1.
/// Near-coincident endpoints are floored at 0.1 NM.
double excess_path_ratio(const Track& track);

Classification classify_track(const Track& track, const ClassifierParams& params = {});

/// classify_track plus the features it decided on.
std::pair<Classification, TrackFeatures> classify_track_features(
    const Track& track, const ClassifierParams& params = {});

std::string to_string(TrackKind kind);
std::string to_string(ReroutedDetail detail);
TrackKind track_kind_from_string(const std::string& s);
ReroutedDetail rerouted_detail_from_string(const std::string& s);

} // namespace tracon
