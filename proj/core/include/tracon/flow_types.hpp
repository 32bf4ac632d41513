#pragma once

#include <string>

#include "tracon/geometry.hpp"

namespace tracon {

inline constexpr double kSlotSeconds = 30.0;
inline constexpr long kSlotsPerDay = 2880;

/// One arrival's lifecycle: when it entered the TRACON, when and where it
/// landed, and how its trajectory was classified.
struct FlightRecord {
    std::string flight_id;
    double entry_t = 0.0;
    double landing_t = 0.0;
    std::string runway; // "R1" or "R2"
    Classification classification;
};

} // namespace tracon
