#pragma once

#include <map>
#include <vector>

#include "tracon/flow_types.hpp"
#include "tracon/rng.hpp"

namespace tracon {

/// Discrete probability law over nominal TRACON transit durations,
/// measured in whole 30-second slots.
class TravelTimeDistribution {
public:
    TravelTimeDistribution() = default;

    /// Validates: non-empty support, durations >= 1 slot, probabilities
    /// >= 0 summing to 1 within 1e-9. Throws InvalidInput otherwise.
    explicit TravelTimeDistribution(std::map<int, double> probabilities);

    const std::map<int, double>& probabilities() const { return probs_; }

    /// Probability-weighted mean of the support, in slots.
    double mean_slots() const;

    /// Inverse-CDF draw; consumes exactly one uniform from the rng.
    int sample(Rng& rng) const;

private:
    std::map<int, double> probs_;
    std::vector<int> support_;
    std::vector<double> cdf_;
};

/// Histogram of direct flights' (landing_t - entry_t), rounded to the
/// nearest whole slot (minimum 1), normalized. Throws CalibrationError
/// when no flight is classified Direct.
TravelTimeDistribution fit_from_direct_tracks(const std::vector<FlightRecord>& records);

/// Bundled stand-in law for scenarios with no calibration data:
/// triangular-shaped over slots 18..44, mode 26, mean 29 slots (14.5 min).
TravelTimeDistribution default_travel_time_distribution();

} // namespace tracon
