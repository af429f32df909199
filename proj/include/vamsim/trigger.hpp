#pragma once

#include "vamsim/core.hpp"

namespace vamsim {

/// Kinematic generation rules: periodic checks against position/speed/heading
/// deltas, bounded by the minimum and maximum inter-generation times.
struct TriggerConfig {
    Seconds checkInterval = 0.1;
    double deltaPosition = 4.0;   // m
    double deltaSpeed = 0.5;      // m/s
    double deltaHeading = 4.0;    // deg, compared on the circle
    Seconds tGenVamMin = 0.1;
    Seconds tGenVamMax = 5.0;

    void validate() const;
};

struct TriggerState {
    KinematicState referenceKinematics;  // values at the last VAM
    Seconds lastVamTime = 0.0;
    bool armed = false;  // a fire is latched and not yet serviced
};

enum class TriggerDecision : std::uint8_t { Hold, Fire };

/// Pure decision function: fire iff the minimum gap has elapsed AND any delta
/// threshold is met or the maximum gap is reached. All comparisons inclusive.
TriggerDecision checkTriggers(const TriggerState& state, Seconds now,
                              const KinematicState& current, const TriggerConfig& cfg);

/// Reference kinematics and the last-VAM timestamp move to "now".
TriggerState resetTriggers(const TriggerState& state, Seconds now, const KinematicState& current);

}  // namespace vamsim
