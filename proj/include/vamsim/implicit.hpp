#pragma once

#include <deque>
#include <optional>

#include "vamsim/core.hpp"
#include "vamsim/rng.hpp"
#include "vamsim/station.hpp"
#include "vamsim/trigger.hpp"

namespace vamsim {

struct ImplicitConfig {
    double clusterRadius = 5.0;  // m, the advertised coverage circle
    Seconds holdoffMin = 0.1;
    Seconds holdoffMax = 5.0;
    /// A standalone neighbor transmits at least once per tGenVamMax, so a VAM
    /// heard within this window means the neighbor is still there.
    Seconds neighborWindow = 5.0;
    bool processingPowerOk = true;

    void validate() const;
};

/// Per-member view of its current leader.
struct MemberRuntime {
    StationId leaderId = 0;
    CoverageOffer lastLeaderOffer;
    Seconds lastLeaderVamTime = 0.0;
    std::optional<Seconds> pendingHoldoff;  // expiry instant
};

/// Transition (e): at least one distinct neighbor heard within the cluster
/// radius recently. The effect is only to flag the NEXT kinematically
/// triggered VAM as a coverage offer; no extra message is generated.
bool onStandaloneHeard(const std::deque<NeighborObservation>& heard, Point2 egoPos, Seconds now,
                       const ImplicitConfig& cfg);

enum class OfferReaction : std::uint8_t { BecomeMember, Ignore, YieldLeadership };

/// Transitions (c) and (i). A leader yields iff the covering sender has the
/// smaller id; deterministic, so two mutual leaders resolve to exactly one.
OfferReaction onOfferReceived(VbsMode egoMode, StationId egoId, Point2 egoPos, const Vam& vam,
                              const ImplicitConfig& cfg);

/// Member trigger fired: hold the VAM for a uniform random delay, giving the
/// leader the chance to cover it first.
Seconds drawHoldoff(Seconds now, Rng& rng, const ImplicitConfig& cfg);

enum class HoldoffOutcome : std::uint8_t { Inhibit, TakeOverAndTransmit };

/// Decision at holdoff expiry: inhibit iff a covering leader VAM arrived
/// during the holdoff and ego is still inside the circle.
HoldoffOutcome onHoldoffExpiry(const MemberRuntime& member, Point2 egoPos, Seconds holdoffStart,
                               Seconds now);

enum class LeaderVamReaction : std::uint8_t { Refresh, ExitToStandalone };

/// Disband-by-silence: a leader VAM without the coverage circle, or one whose
/// circle no longer contains ego, ends the membership.
LeaderVamReaction onLeaderVamReceived(Point2 egoPos, const Vam& vam);

/// Non-negotiated clustering: coverage offers ride ordinary VAMs, members
/// self-inhibit behind a random holdoff, clusters disband by silence, and a
/// lost leader is replaced by whichever member's holdoff expires first.
class ImplicitStation {
public:
    ImplicitStation(StationId id, std::uint32_t idx, ImplicitConfig cfg, TriggerConfig trigCfg,
                    Rng holdoffRng, EngineHooks* hooks);

    void activate(Seconds now, const KinematicState& kin);
    void deactivate(Seconds now);  // (b)/(g)
    void tick(Seconds now, const KinematicState& kin);
    void onVamReceived(Seconds now, const KinematicState& egoKin, const Vam& vam);
    void onHoldoffTimer(Seconds now, std::uint64_t generation, const KinematicState& kin);
    /// Transition (f): next VAM goes out without the circle; members decay.
    void dropOffer(Seconds now);
    /// Segment wrap relocated the station; its own odometry is continuous,
    /// everything heard at the old location is stale.
    void onPositionWrap(double dx);

    VbsMode mode() const { return mode_; }
    StationId id() const { return id_; }
    const MemberRuntime& member() const { return member_; }
    const TriggerState& triggerState() const { return trig_; }
    bool holdoffPending() const { return holdoffPending_; }

private:
    void transmit(Seconds now, const KinematicState& kin);
    void cancelHoldoff();
    void setMode(Seconds now, VbsMode to, TransitionCause cause);

    StationId id_;
    std::uint32_t idx_;
    ImplicitConfig cfg_;
    TriggerConfig trigCfg_;
    Rng holdoffRng_;
    EngineHooks* hooks_;

    VbsMode mode_ = VbsMode::Idle;
    TriggerState trig_;
    MemberRuntime member_;
    std::deque<NeighborObservation> heard_;
    bool holdoffPending_ = false;
    Seconds holdoffStart_ = 0.0;
    std::uint64_t holdoffGen_ = 0;
    bool dropOfferPending_ = false;
};

}  // namespace vamsim
