#include "tracon/travel_time.hpp"

#include <algorithm>
#include <cmath>

#include "tracon/error.hpp"

namespace tracon {

TravelTimeDistribution::TravelTimeDistribution(std::map<int, double> probabilities)
    : probs_(std::move(probabilities)) {
    if (probs_.empty()) throw InvalidInput("travel time distribution has empty support");
    double sum = 0.0;
    for (const auto& [slots, p] : probs_) {
        if (slots < 1) throw InvalidInput("travel time durations must be >= 1 slot");
        if (!(p >= 0.0)) throw InvalidInput("travel time probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidInput("travel time probabilities must sum to 1");
    }
    support_.reserve(probs_.size());
    cdf_.reserve(probs_.size());
    double acc = 0.0;
    for (const auto& [slots, p] : probs_) {
        acc += p;
        support_.push_back(slots);
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

double TravelTimeDistribution::mean_slots() const {
    double mean = 0.0;
    for (const auto& [slots, p] : probs_) mean += slots * p;
    return mean;
}

int TravelTimeDistribution::sample(Rng& rng) const {
    const double u = rng.next_double();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u,
                                     [](double c, double v) { return c <= v; });
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cdf_.begin()), support_.size() - 1);
    return support_[idx];
}

TravelTimeDistribution fit_from_direct_tracks(const std::vector<FlightRecord>& records) {
    std::map<int, double> hist;
    long n_direct = 0;
    for (const auto& r : records) {
        if (r.classification.kind != TrackKind::Direct) continue;
        const double duration_s = r.landing_t - r.entry_t;
        const int slots = std::max(1, static_cast<int>(std::lround(duration_s / kSlotSeconds)));
        hist[slots] += 1.0;
        ++n_direct;
    }
    if (n_direct == 0) {
        throw CalibrationError("no direct flights available to calibrate travel times");
    }
    for (auto& [slots, count] : hist) count /= static_cast<double>(n_direct);
    return TravelTimeDistribution(std::move(hist));
}

TravelTimeDistribution default_travel_time_distribution() {
    // Rising weights k-17 on 18..26, falling a*(45-k) on 27..44 with
    // a = 255/627, which places the mean at exactly 29 slots.
    const double a = 255.0 / 627.0;
    std::map<int, double> weights;
    double total = 0.0;
    for (int k = 18; k <= 26; ++k) {
        weights[k] = static_cast<double>(k - 17);
        total += weights[k];
    }
    for (int k = 27; k <= 44; ++k) {
        weights[k] = a * static_cast<double>(45 - k);
        total += weights[k];
    }
    for (auto& [k, w] : weights) w /= total;
    return TravelTimeDistribution(std::move(weights));
}

} // namespace tracon
