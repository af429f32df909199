#include "vamsim/trigger.hpp"

#include <stdexcept>

namespace vamsim {

void TriggerConfig::validate() const {
    if (checkInterval <= 0.0) throw std::invalid_argument("trigger.checkInterval must be > 0");
    if (tGenVamMin <= 0.0 || tGenVamMin > tGenVamMax)
        throw std::invalid_argument("trigger: 0 < tGenVamMin <= tGenVamMax required");
    if (deltaPosition <= 0.0 || deltaSpeed <= 0.0 || deltaHeading <= 0.0)
        throw std::invalid_argument("trigger: all deltas must be > 0");
}

namespace {
// Check instants are k * interval products; deadline comparisons tolerate
// the resulting last-bit noise so a boundary never slips a full tick.
constexpr Seconds kTimeEps = 1e-9;
}  // namespace

TriggerDecision checkTriggers(const TriggerState& state, Seconds now,
                              const KinematicState& current, const TriggerConfig& cfg) {
    const Seconds sinceLast = now - state.lastVamTime;
    if (sinceLast < cfg.tGenVamMin - kTimeEps) return TriggerDecision::Hold;
    if (sinceLast >= cfg.tGenVamMax - kTimeEps) return TriggerDecision::Fire;

    const auto& ref = state.referenceKinematics;
    if (distance(current.position, ref.position) >= cfg.deltaPosition) return TriggerDecision::Fire;
    if (std::fabs(current.speedMps - ref.speedMps) >= cfg.deltaSpeed) return TriggerDecision::Fire;
    if (headingDeltaDeg(current.headingDeg, ref.headingDeg) >= cfg.deltaHeading)
        return TriggerDecision::Fire;
    return TriggerDecision::Hold;
}

TriggerState resetTriggers(const TriggerState&, Seconds now, const KinematicState& current) {
    return TriggerState{current, now, false};
}

}  // namespace vamsim
