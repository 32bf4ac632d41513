#include <doctest.h>

#include <cmath>

#include "tracon/error.hpp"
#include "tracon/geometry.hpp"
#include "tracon/rng.hpp"
#include "tracon/synthetic.hpp"

using namespace tracon;

namespace {

constexpr double kPi = 3.14159265358979323846;

Track make_track(std::vector<TrackPoint> pts) {
    Track t;
    t.flight_id = "T";
    t.points = std::move(pts);
    return t;
}

/// Oracle for resampling: true iff p lies on some segment of the polyline.
bool on_polyline(const Track& track, const TrackPoint& p, double tol = 1e-9) {
    for (std::size_t i = 0; i + 1 < track.points.size(); ++i) {
        const auto& a = track.points[i];
        const auto& b = track.points[i + 1];
        if (p.t < a.t - tol || p.t > b.t + tol) continue;
        const double u = (p.t - a.t) / (b.t - a.t);
        const double x = a.x + u * (b.x - a.x);
        const double y = a.y + u * (b.y - a.y);
        if (std::abs(x - p.x) < tol && std::abs(y - p.y) < tol) return true;
    }
    return false;
}

Track rotate_translate(const Track& track, double deg, double dx, double dy) {
    const double c = std::cos(deg * kPi / 180.0);
    const double s = std::sin(deg * kPi / 180.0);
    Track out = track;
    for (auto& p : out.points) {
        const double x = c * p.x - s * p.y + dx;
        const double y = s * p.x + c * p.y + dy;
        p.x = x;
        p.y = y;
    }
    return out;
}

} // namespace

TEST_CASE("resample_track interpolates linearly on the slot grid") {
    const Track t = make_track({{0, 0, 0}, {60, 1, 0}});
    const Track r = resample_track(t, 30.0);
    REQUIRE(r.points.size() == 3);
    CHECK(r.points[0].t == 0.0);
    CHECK(r.points[1].t == 30.0);
    CHECK(r.points[2].t == 60.0);
    CHECK(r.points[0].x == doctest::Approx(0.0));
    CHECK(r.points[1].x == doctest::Approx(0.5));
    CHECK(r.points[2].x == doctest::Approx(1.0));
}

TEST_CASE("resample_track is the identity on already-sampled tracks") {
    const Track t = make_track({{0, 0, 0}, {10, 1, 2}, {20, 3, 1}, {30, 4, 4}});
    const Track r = resample_track(t, 10.0);
    REQUIRE(r.points.size() == t.points.size());
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        CHECK(r.points[i].t == doctest::Approx(t.points[i].t));
        CHECK(r.points[i].x == doctest::Approx(t.points[i].x));
        CHECK(r.points[i].y == doctest::Approx(t.points[i].y));
    }
}

TEST_CASE("resample_track outputs lie on the input polyline") {
    Rng rng(7);
    Track t;
    t.flight_id = "R";
    double time = 0.0;
    double x = -20.0, y = 5.0;
    for (int i = 0; i < 50; ++i) {
        t.points.push_back({time, x, y});
        time += rng.uniform(3.0, 17.0);
        x += rng.uniform(-1.0, 1.5);
        y += rng.uniform(-1.0, 1.0);
    }
    const Track r = resample_track(t, 10.0);
    CHECK(r.points.front().t == t.points.front().t);
    CHECK(r.points.back().t == t.points.back().t);
    for (const auto& p : r.points) CHECK(on_polyline(t, p));
}

TEST_CASE("resample_track rejects degenerate input") {
    CHECK_THROWS_AS(resample_track(make_track({{0, 0, 0}}), 10.0), InvalidInput);
    CHECK_THROWS_AS(resample_track(make_track({{0, 0, 0}, {10, 1, 0}}), 0.0), InvalidInput);
}

TEST_CASE("heading_series uses compass convention") {
    const Track east = make_track({{0, 0, 0}, {10, 1, 0}, {20, 2, 0}, {30, 3, 0}});
    for (const auto& h : heading_series(east)) CHECK(h.heading_deg == doctest::Approx(90.0));

    // counterclockwise square: east, north, west, south
    const Track square = make_track({{0, 0, 0}, {10, 1, 0}, {20, 1, 1}, {30, 0, 1}, {40, 0, 0}});
    const auto hs = heading_series(square);
    REQUIRE(hs.size() == 4);
    CHECK(hs[0].heading_deg == doctest::Approx(90.0));
    CHECK(hs[1].heading_deg == doctest::Approx(0.0));
    CHECK(hs[2].heading_deg == doctest::Approx(270.0));
    CHECK(hs[3].heading_deg == doctest::Approx(180.0));
}

TEST_CASE("heading_series skips zero-length displacements") {
    const Track t = make_track({{0, 0, 0}, {10, 0, 0}, {20, 1, 0}});
    const auto hs = heading_series(t);
    REQUIRE(hs.size() == 1);
    CHECK(hs[0].heading_deg == doctest::Approx(90.0));
}

TEST_CASE("cumulative_turn on a sampled 180-degree arc") {
    // chord headings of an n-segment arc turn through (n-1)/n of the arc
    Track arc;
    arc.flight_id = "A";
    for (int i = 0; i <= 72; ++i) {
        const double a = kPi * i / 72.0;
        arc.points.push_back({static_cast<double>(i * 10), 5.0 * std::cos(a), 5.0 * std::sin(a)});
    }
    const auto [net, winding] = cumulative_turn(heading_series(arc));
    CHECK(std::abs(std::abs(net) - 180.0) < 5.0);
    CHECK(std::abs(winding - 180.0) < 5.0);
}

TEST_CASE("cumulative_turn basics") {
    const Track east = make_track({{0, 0, 0}, {10, 1, 0}, {20, 2, 0}});
    const auto [net0, wind0] = cumulative_turn(heading_series(east));
    CHECK(net0 == doctest::Approx(0.0));
    CHECK(wind0 == doctest::Approx(0.0));

    // closed counterclockwise loop, sampled one point past closure so the
    // heading returns to its start: |net| = 360 exactly
    Track loop;
    loop.flight_id = "L";
    for (int i = 0; i <= 25; ++i) {
        const double a = 2.0 * kPi * i / 24.0;
        loop.points.push_back({static_cast<double>(i * 10), 3.0 * std::cos(a), 3.0 * std::sin(a)});
    }
    const auto [net1, wind1] = cumulative_turn(heading_series(loop));
    CHECK(std::abs(std::abs(net1) - 360.0) < 1e-6);
    CHECK(wind1 == doctest::Approx(360.0));

    // S-turn: +60 then -60
    const double s = std::sin(kPi / 3.0), c = std::cos(kPi / 3.0);
    const Track sturn = make_track({{0, 0, 0},
                                    {10, 1, 0},
                                    {20, 1 + c, s},
                                    {30, 2 + 2 * c, s},
                                    {40, 3 + 2 * c, s}});
    const auto [net2, wind2] = cumulative_turn(heading_series(sturn));
    CHECK(std::abs(net2) < 1e-6);
    CHECK(wind2 == doctest::Approx(120.0));
}

TEST_CASE("excess_path_ratio") {
    CHECK(excess_path_ratio(make_track({{0, 0, 0}, {60, 10, 0}})) == doctest::Approx(1.0));

    // right-angle dogleg: two 10 NM legs
    const Track dogleg = make_track({{0, 0, 0}, {100, 10, 0}, {200, 10, 10}});
    CHECK(excess_path_ratio(dogleg) == doctest::Approx(20.0 / (10.0 * std::sqrt(2.0))));

    // square loop of perimeter 20 plus a 10 NM approach: 30 / 10
    const Track loop = make_track({{0, 0, 0},
                                   {50, 5, 0},
                                   {100, 5, 5},
                                   {150, 0, 5},
                                   {200, 0, 0},
                                   {300, 10, 0}});
    CHECK(excess_path_ratio(loop) == doctest::Approx(3.0));
}

TEST_CASE("excess_path_ratio floors near-coincident endpoints") {
    // closed square: endpoints coincide; denominator floored at 0.1 NM
    const Track closed = make_track({{0, 0, 0}, {50, 5, 0}, {100, 5, 5}, {150, 0, 5}, {200, 0, 0}});
    CHECK(excess_path_ratio(closed) == doctest::Approx(20.0 / 0.1));
    // tiny collinear track stays >= 1 despite the floor
    const Track tiny = make_track({{0, 0, 0}, {10, 0.01, 0}});
    CHECK(excess_path_ratio(tiny) == doctest::Approx(1.0));
}

TEST_CASE("classify_track separates the generator archetypes") {
    Rng rng(11);
    TrackTemplate direct{ArchetypeKind::Direct, 45.0, 40.0, 210.0, 0.0};
    CHECK(classify_track(gen_track(direct, rng).first) == direct_class());

    TrackTemplate hippo{ArchetypeKind::Hippodrome, 120.0, 40.0, 210.0, 0.0};
    const auto [htrack, hlabel] = gen_track(hippo, rng);
    const auto [hcls, hfeat] = classify_track_features(htrack);
    CHECK(hcls == rerouted_class(ReroutedDetail::Hippodrome));
    CHECK(hfeat.total_winding_deg >= 540.0);

    TrackTemplate sturn{ArchetypeKind::STurn, 200.0, 40.0, 210.0, 0.0};
    CHECK(classify_track(gen_track(sturn, rng).first) == rerouted_class(ReroutedDetail::STurn));
}

TEST_CASE("classify_track rejects degenerate tracks") {
    CHECK_THROWS_AS(classify_track(make_track({{0, 0, 0}})), InvalidInput);
    CHECK_THROWS_AS(validate_track(make_track({{0, 100, 0}, {10, 0, 0}})), InvalidInput);
}

TEST_CASE("classification is invariant under rotation, translation and time rescale") {
    Rng rng(23);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const auto kind = static_cast<ArchetypeKind>(i % 3);
        auto tmpl = random_template(kind, 0.1, rng);
        tmpl.entry_radius_nm = 32.0; // leave room for the translation
        auto [track, label] = gen_track(tmpl, rng);
        const Classification base = classify_track(track);

        const Track moved = rotate_translate(track, rng.uniform(0.0, 360.0),
                                             rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        CHECK(classify_track(moved) == base);

        Track rescaled = track;
        for (auto& p : rescaled.points) p.t *= 3.0;
        CHECK(classify_track(rescaled) == base);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("excess_path_ratio is always >= 1 on generated tracks") {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const auto kind = static_cast<ArchetypeKind>(i % 3);
        const auto [track, label] = gen_track(random_template(kind, 0.2, rng), rng);
        CHECK(excess_path_ratio(track) >= 1.0);
    }
}

TEST_CASE("direct generator tracks stay below the loop winding threshold") {
    Rng rng(43);
    const ClassifierParams params;
    for (int i = 0; i < 150; ++i) {
        const auto [track, label] = gen_track(random_template(ArchetypeKind::Direct, 0.2, rng), rng);
        const auto [cls, feat] = classify_track_features(track, params);
        CHECK(feat.total_winding_deg < params.loop_winding_threshold_deg);
    }
}

TEST_CASE("classification is stable under resample refinement") {
    Rng rng(59);
    ClassifierParams coarse;
    ClassifierParams fine;
    fine.resample_dt_s = coarse.resample_dt_s / 2.0;
    int agree = 0;
    const int n = 300;
    for (int i = 0; i < n; ++i) {
        const auto kind = static_cast<ArchetypeKind>(i % 3);
        const auto [track, label] = gen_track(random_template(kind, 0.1, rng), rng);
        if (classify_track(track, coarse) == classify_track(track, fine)) ++agree;
    }
    CHECK(agree >= static_cast<int>(0.99 * n));
}
