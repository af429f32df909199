#include "vamsim/implicit.hpp"

#include <stdexcept>

namespace vamsim {

void ImplicitConfig::validate() const {
    if (!(holdoffMin > 0.0 && holdoffMin < holdoffMax))
        throw std::invalid_argument("implicit: 0 < holdoffMin < holdoffMax required");
    if (clusterRadius <= 0.0) throw std::invalid_argument("implicit.clusterRadius must be > 0");
}

bool onStandaloneHeard(const std::deque<NeighborObservation>& heard, Point2 egoPos, Seconds now,
                       const ImplicitConfig& cfg) {
    if (!cfg.processingPowerOk) return false;
    return distinctNeighborsWithin(heard, egoPos, cfg.clusterRadius, now, cfg.neighborWindow) >= 1;
}

OfferReaction onOfferReceived(VbsMode egoMode, StationId egoId, Point2 egoPos, const Vam& vam,
                              const ImplicitConfig&) {
    if (!vam.coverage || !withinCoverage(egoPos, *vam.coverage)) return OfferReaction::Ignore;
    switch (egoMode) {
        case VbsMode::ActiveStandalone:
        case VbsMode::ActiveClusterMember:
            return OfferReaction::BecomeMember;
        case VbsMode::ActiveClusterLeader:
            return vam.sender < egoId ? OfferReaction::YieldLeadership : OfferReaction::Ignore;
        default:
            return OfferReaction::Ignore;
    }
}

Seconds drawHoldoff(Seconds now, Rng& rng, const ImplicitConfig& cfg) {
    return now + rng.uniform(cfg.holdoffMin, cfg.holdoffMax);
}

HoldoffOutcome onHoldoffExpiry(const MemberRuntime& member, Point2 egoPos, Seconds holdoffStart,
                               Seconds now) {
    (void)now;
    if (member.lastLeaderVamTime > holdoffStart &&
        withinCoverage(egoPos, member.lastLeaderOffer)) {
        return HoldoffOutcome::Inhibit;
    }
    return HoldoffOutcome::TakeOverAndTransmit;
}

LeaderVamReaction onLeaderVamReceived(Point2 egoPos, const Vam& vam) {
    if (vam.coverage && withinCoverage(egoPos, *vam.coverage)) return LeaderVamReaction::Refresh;
    return LeaderVamReaction::ExitToStandalone;
}

ImplicitStation::ImplicitStation(StationId id, std::uint32_t idx, ImplicitConfig cfg,
                                 TriggerConfig trigCfg, Rng holdoffRng, EngineHooks* hooks)
    : id_(id), idx_(idx), cfg_(cfg), trigCfg_(trigCfg), holdoffRng_(holdoffRng), hooks_(hooks) {}

void ImplicitStation::setMode(Seconds now, VbsMode to, TransitionCause cause) {
    hooks_->recordTransition(idx_, now, mode_, to, cause);
    mode_ = to;
}

void ImplicitStation::cancelHoldoff() {
    holdoffPending_ = false;
    member_.pendingHoldoff.reset();
    ++holdoffGen_;
}

void ImplicitStation::activate(Seconds now, const KinematicState& kin) {
    if (mode_ != VbsMode::Idle) return;
    trig_ = resetTriggers(trig_, now, kin);
    setMode(now, VbsMode::ActiveStandalone, TransitionCause::Activate);
    transmit(now, kin);
}

void ImplicitStation::deactivate(Seconds now) {
    if (mode_ == VbsMode::Idle) return;
    setMode(now, VbsMode::Idle,
            mode_ == VbsMode::ActiveClusterLeader ? TransitionCause::ImplicitGoIdle
                                                  : TransitionCause::Deactivate);
    cancelHoldoff();
    heard_.clear();
    dropOfferPending_ = false;
}

void ImplicitStation::dropOffer(Seconds now) {
    (void)now;
    if (mode_ == VbsMode::ActiveClusterLeader) dropOfferPending_ = true;
}

void ImplicitStation::transmit(Seconds now, const KinematicState& kin) {
    bool offer = false;
    if (mode_ == VbsMode::ActiveClusterLeader) {
        if (dropOfferPending_) {
            dropOfferPending_ = false;
            setMode(now, VbsMode::ActiveStandalone, TransitionCause::ImplicitDropOffer);
        } else {
            offer = true;
        }
    } else if (onStandaloneHeard(heard_, kin.position, now, cfg_)) {
        offer = true;
        setMode(now, VbsMode::ActiveClusterLeader,
                mode_ == VbsMode::ActiveClusterMember ? TransitionCause::ImplicitTakeover
                                                      : TransitionCause::ImplicitOffer);
    } else if (mode_ == VbsMode::ActiveClusterMember) {
        // Taking over without anyone left in range: plain standalone VAM.
        setMode(now, VbsMode::ActiveStandalone, TransitionCause::ImplicitExit);
    }
    hooks_->emitVam(idx_, now, kin,
                    offer ? std::optional<CoverageOffer>({kin.position, cfg_.clusterRadius})
                          : std::nullopt,
                    std::nullopt);
    trig_ = resetTriggers(trig_, now, kin);
    cancelHoldoff();
}

void ImplicitStation::tick(Seconds now, const KinematicState& kin) {
    if (mode_ == VbsMode::Idle) return;
    pruneHeard(heard_, now, cfg_.neighborWindow);

    const bool fire = checkTriggers(trig_, now, kin, trigCfg_) == TriggerDecision::Fire;
    if (!fire) return;

    if (mode_ == VbsMode::ActiveClusterMember) {
        // Members do not transmit on a trigger; they hold off and give the
        // leader the chance to refresh them first.
        if (!holdoffPending_) {
            trig_.armed = true;
            holdoffPending_ = true;
            holdoffStart_ = now;
            const Seconds expiry = drawHoldoff(now, holdoffRng_, cfg_);
            member_.pendingHoldoff = expiry;
            hooks_->scheduleHoldoff(idx_, expiry, ++holdoffGen_);
        }
        return;
    }
    transmit(now, kin);
}

void ImplicitStation::onVamReceived(Seconds now, const KinematicState& egoKin, const Vam& vam) {
    if (mode_ == VbsMode::Idle) return;
    heard_.push_back({vam.sender, vam.kinematics, now});

    if (!vam.coverage) {
        // Disband-by-silence: our leader dropped its circle.
        if (mode_ == VbsMode::ActiveClusterMember && vam.sender == member_.leaderId) {
            cancelHoldoff();
            setMode(now, VbsMode::ActiveStandalone, TransitionCause::ImplicitExit);
        }
        return;
    }

    switch (onOfferReceived(mode_, id_, egoKin.position, vam, cfg_)) {
        case OfferReaction::BecomeMember: {
            if (mode_ == VbsMode::ActiveStandalone)
                setMode(now, VbsMode::ActiveClusterMember, TransitionCause::ImplicitBecomeMember);
            // A covering offer from any station refreshes: adopt the sender,
            // restart the kinematic triggers, drop any pending holdoff.
            member_.leaderId = vam.sender;
            member_.lastLeaderOffer = *vam.coverage;
            member_.lastLeaderVamTime = now;
            trig_ = resetTriggers(trig_, now, egoKin);
            cancelHoldoff();
            break;
        }
        case OfferReaction::YieldLeadership: {
            setMode(now, VbsMode::ActiveClusterMember, TransitionCause::ImplicitYield);
            member_.leaderId = vam.sender;
            member_.lastLeaderOffer = *vam.coverage;
            member_.lastLeaderVamTime = now;
            trig_ = resetTriggers(trig_, now, egoKin);
            cancelHoldoff();
            dropOfferPending_ = false;
            break;
        }
        case OfferReaction::Ignore: {
            // A covering circle that excludes ego ends the membership.
            if (mode_ == VbsMode::ActiveClusterMember && vam.sender == member_.leaderId &&
                onLeaderVamReceived(egoKin.position, vam) == LeaderVamReaction::ExitToStandalone) {
                cancelHoldoff();
                setMode(now, VbsMode::ActiveStandalone, TransitionCause::ImplicitExit);
            }
            break;
        }
    }
}

void ImplicitStation::onHoldoffTimer(Seconds now, std::uint64_t generation,
                                     const KinematicState& kin) {
    if (!holdoffPending_ || generation != holdoffGen_) return;  // stale
    holdoffPending_ = false;
    member_.pendingHoldoff.reset();

    if (onHoldoffExpiry(member_, kin.position, holdoffStart_, now) == HoldoffOutcome::Inhibit)
        return;

    // The leader stayed silent through the holdoff: take over. transmit()
    // attaches a coverage offer iff neighbors were heard within the window.
    transmit(now, kin);
}

}  // namespace vamsim
