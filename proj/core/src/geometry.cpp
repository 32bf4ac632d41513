#include "tracon/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "tracon/error.hpp"

namespace tracon {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEndpointFloorNm = 0.1;

double hypot2(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

/// Signed smallest-angle difference b - a in (-180, 180].
double angle_delta(double a, double b) {
    double d = std::fmod(b - a, 360.0);
    if (d <= -180.0) d += 360.0;
    if (d > 180.0) d -= 360.0;
    return d;
}

double wrap360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

} // namespace

void validate_track(const Track& track) {
    if (track.points.size() < 2) {
        throw InvalidInput("track '" + track.flight_id + "' has fewer than 2 points");
    }
    double prev_t = -1.0;
    for (const auto& p : track.points) {
        if (!std::isfinite(p.t) || p.t < 0.0) {
            throw InvalidInput("track '" + track.flight_id + "' has a non-finite or negative timestamp");
        }
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InvalidInput("track '" + track.flight_id + "' has a non-finite coordinate");
        }
        if (hypot2(p.x, p.y) > kTrackBoundNm) {
            throw InvalidInput("track '" + track.flight_id + "' leaves the containment bound");
        }
        if (p.t <= prev_t) {
            throw InvalidInput("track '" + track.flight_id + "' timestamps are not strictly increasing");
        }
        prev_t = p.t;
    }
}

Track resample_track(const Track& track, double dt_s) {
    if (dt_s <= 0.0) throw InvalidInput("resample dt must be positive");
    validate_track(track);

    const auto& pts = track.points;
    Track out;
    out.flight_id = track.flight_id;
    out.runway = track.runway;

    const double t0 = pts.front().t;
    const double t_end = pts.back().t;
    std::size_t seg = 0;
    for (std::size_t i = 0;; ++i) {
        const double t = t0 + static_cast<double>(i) * dt_s;
        if (t >= t_end) break;
        while (seg + 2 < pts.size() && pts[seg + 1].t <= t) ++seg;
        const auto& a = pts[seg];
        const auto& b = pts[seg + 1];
        const double u = (t - a.t) / (b.t - a.t);
        out.points.push_back({t, a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
    }
    out.points.push_back(pts.back());
    return out;
}

std::vector<HeadingSample> heading_series(const Track& track) {
    const auto& pts = track.points;
    std::vector<HeadingSample> out;
    if (pts.size() < 2) return out;
    out.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dx = pts[i + 1].x - pts[i].x;
        const double dy = pts[i + 1].y - pts[i].y;
        if (dx == 0.0 && dy == 0.0) continue;
        const double heading = wrap360(std::atan2(dx, dy) * 180.0 / kPi);
        out.push_back({pts[i].t, heading});
    }
    return out;
}

std::pair<double, double> cumulative_turn(const std::vector<HeadingSample>& headings) {
    double net = 0.0;
    double winding = 0.0;
    for (std::size_t i = 0; i + 1 < headings.size(); ++i) {
        const double d = angle_delta(headings[i].heading_deg, headings[i + 1].heading_deg);
        net += d;
        winding += std::abs(d);
    }
    return {net, winding};
}

std::vector<HeadingSample> smooth_headings(const std::vector<HeadingSample>& headings,
                                           int window) {
    if (window <= 1 || headings.size() < 2) return headings;
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), headings.size());

    // Unwrap so the moving average never straddles the 0/360 seam.
    std::vector<double> unwrapped(headings.size());
    unwrapped[0] = headings[0].heading_deg;
    for (std::size_t i = 1; i < headings.size(); ++i) {
        unwrapped[i] = unwrapped[i - 1] + angle_delta(headings[i - 1].heading_deg,
                                                      headings[i].heading_deg);
    }

    std::vector<HeadingSample> out;
    out.reserve(headings.size() - w + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < headings.size(); ++i) {
        acc += unwrapped[i];
        if (i + 1 >= w) {
            out.push_back({headings[i + 1 - w].t, wrap360(acc / static_cast<double>(w))});
            acc -= unwrapped[i + 1 - w];
        }
    }
    return out;
}

double excess_path_ratio(const Track& track) {
    validate_track(track);
    const auto& pts = track.points;
    double arc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        arc += hypot2(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
    }
    const double chord = hypot2(pts.back().x - pts.front().x, pts.back().y - pts.front().y);
    const double denom = std::max(chord, kEndpointFloorNm);
    return std::max(1.0, arc / denom);
}

std::pair<Classification, TrackFeatures> classify_track_features(
    const Track& track, const ClassifierParams& params) {
    if (params.resample_dt_s <= 0.0 || params.excess_path_ratio_threshold <= 0.0 ||
        params.net_turn_threshold_deg <= 0.0 || params.loop_winding_threshold_deg <= 0.0 ||
        params.smoothing_window <= 0) {
        throw InvalidInput("classifier parameters must be strictly positive");
    }
    if (params.loop_winding_threshold_deg < params.net_turn_threshold_deg) {
        throw InvalidInput("loop winding threshold must be >= net turn threshold");
    }
    validate_track(track);

    TrackFeatures f;
    f.excess_ratio = excess_path_ratio(track);

    const Track resampled = resample_track(track, params.resample_dt_s);
    const auto headings = smooth_headings(heading_series(resampled), params.smoothing_window);
    if (headings.size() >= 2) {
        const auto [net, winding] = cumulative_turn(headings);
        f.net_turn_deg = net;
        f.total_winding_deg = winding;
    }

    const bool rerouted = f.excess_ratio > params.excess_path_ratio_threshold ||
                          f.total_winding_deg > params.net_turn_threshold_deg;
    if (!rerouted) return {direct_class(), f};

    ReroutedDetail detail = ReroutedDetail::Other;
    if (f.total_winding_deg >= params.loop_winding_threshold_deg) {
        detail = ReroutedDetail::Hippodrome;
    } else if (std::abs(f.net_turn_deg) <= 30.0 &&
               f.total_winding_deg > params.net_turn_threshold_deg) {
        detail = ReroutedDetail::STurn;
    }
    return {rerouted_class(detail), f};
}

Classification classify_track(const Track& track, const ClassifierParams& params) {
    return classify_track_features(track, params).first;
}

std::string to_string(TrackKind kind) {
    return kind == TrackKind::Direct ? "direct" : "rerouted";
}

std::string to_string(ReroutedDetail detail) {
    switch (detail) {
        case ReroutedDetail::STurn: return "s_turn";
        case ReroutedDetail::Hippodrome: return "hippodrome";
        case ReroutedDetail::Other: return "other";
    }
    return "other";
}

TrackKind track_kind_from_string(const std::string& s) {
    if (s == "direct") return TrackKind::Direct;
    if (s == "rerouted") return TrackKind::Rerouted;
    throw ParseError("unknown track kind '" + s + "'");
}

ReroutedDetail rerouted_detail_from_string(const std::string& s) {
    if (s == "s_turn") return ReroutedDetail::STurn;
    if (s == "hippodrome") return ReroutedDetail::Hippodrome;
    if (s == "other") return ReroutedDetail::Other;
    throw ParseError("unknown rerouted detail '" + s + "'");
}

} // namespace tracon
