#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "vamsim/core.hpp"

namespace vamsim {

/// A neighbor's VAM as remembered by a receiving station.
struct NeighborObservation {
    StationId id = 0;
    KinematicState kinematics;
    Seconds heardAt = 0.0;
};

/// Labeled protocol transitions, one per arrow of the two state diagrams.
enum class TransitionCause : std::uint8_t {
    Activate,             // (1)/(a) ego starts transmitting VAMs
    Deactivate,           // (2)/(b) ego stops transmitting VAMs
    EtsiJoin,             // (3) join confirmed, ego goes Passive
    EtsiLeave,            // (4) leader lost or conditions unsatisfied
    EtsiBreakupMember,    // member standalone again after a BreakUp VAM
    EtsiForm,             // (5) ego creates a cluster
    EtsiBreakupLeader,    // (6) ego breaks up the cluster it created
    ImplicitBecomeMember, // (c) covered by a heard offer
    ImplicitExit,         // (d) cluster conditions not satisfied
    ImplicitOffer,        // (e) ego starts offering coverage
    ImplicitDropOffer,    // (f) ego stops offering coverage
    ImplicitGoIdle,       // (g) leader stops transmitting without break-up
    ImplicitTakeover,     // (h) leader silent, ego transmits offering coverage
    ImplicitYield,        // (i) ego yields leadership to a close offerer
};

const char* toString(TransitionCause c);

struct TransitionRecord {
    Seconds time = 0.0;
    StationId station = 0;
    VbsMode from = VbsMode::Idle;
    VbsMode to = VbsMode::Idle;
    TransitionCause cause = TransitionCause::Activate;
};

/// Services the simulation engine provides to protocol state machines.
class EngineHooks {
public:
    virtual ~EngineHooks() = default;

    /// Compose and queue a VAM for the station at `idx`. The station resets
    /// its own trigger state; the engine handles sizing, logging and the MAC.
    virtual void emitVam(std::uint32_t idx, Seconds now, const KinematicState& kin,
                         std::optional<CoverageOffer> coverage,
                         std::optional<EtsiClusterContainer> container) = 0;

    virtual void scheduleHoldoff(std::uint32_t idx, Seconds expiry, std::uint64_t generation) = 0;

    virtual void recordTransition(std::uint32_t idx, Seconds now, VbsMode from, VbsMode to,
                                  TransitionCause cause) = 0;

    virtual std::uint32_t allocateClusterId() = 0;
};

/// Drops observations older than `window`.
void pruneHeard(std::deque<NeighborObservation>& heard, Seconds now, Seconds window);

/// Distinct neighbors within `radiusM` of `egoPos` heard within `window`.
int distinctNeighborsWithin(const std::deque<NeighborObservation>& heard, Point2 egoPos,
                            double radiusM, Seconds now, Seconds window);

}  // namespace vamsim
