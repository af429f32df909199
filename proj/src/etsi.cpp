#include "vamsim/etsi.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vamsim {

const char* toString(TransitionCause c) {
    switch (c) {
        case TransitionCause::Activate: return "activate";
        case TransitionCause::Deactivate: return "deactivate";
        case TransitionCause::EtsiJoin: return "etsiJoin";
        case TransitionCause::EtsiLeave: return "etsiLeave";
        case TransitionCause::EtsiBreakupMember: return "etsiBreakupMember";
        case TransitionCause::EtsiForm: return "etsiForm";
        case TransitionCause::EtsiBreakupLeader: return "etsiBreakupLeader";
        case TransitionCause::ImplicitBecomeMember: return "implicitBecomeMember";
        case TransitionCause::ImplicitExit: return "implicitExit";
        case TransitionCause::ImplicitOffer: return "implicitOffer";
        case TransitionCause::ImplicitDropOffer: return "implicitDropOffer";
        case TransitionCause::ImplicitGoIdle: return "implicitGoIdle";
        case TransitionCause::ImplicitTakeover: return "implicitTakeover";
        case TransitionCause::ImplicitYield: return "implicitYield";
    }
    return "?";
}

void pruneHeard(std::deque<NeighborObservation>& heard, Seconds now, Seconds window) {
    while (!heard.empty() && heard.front().heardAt < now - window) heard.pop_front();
}

int distinctNeighborsWithin(const std::deque<NeighborObservation>& heard, Point2 egoPos,
                            double radiusM, Seconds now, Seconds window) {
    std::set<StationId> distinct;
    for (const auto& obs : heard) {
        if (obs.heardAt < now - window) continue;
        if (distance(obs.kinematics.position, egoPos) <= radiusM) distinct.insert(obs.id);
    }
    return static_cast<int>(distinct.size());
}

void EtsiClusterConfig::validate() const {
    if (minNeighborsToForm < 1) throw std::invalid_argument("etsi.minNeighborsToForm must be >= 1");
    if (timeClusterJoinSuccess <= 0.0 || timeClusterJoinSuccess >= timeClusterContinuity)
        throw std::invalid_argument("etsi: 0 < timeClusterJoinSuccess < timeClusterContinuity");
    if (joinDistance <= 0.0) throw std::invalid_argument("etsi.joinDistance must be > 0");
    if (maxMembers < 1) throw std::invalid_argument("etsi.maxMembers must be >= 1");
}

bool evaluateFormation(const std::deque<NeighborObservation>& heard, Point2 egoPos, Seconds now,
                       const EtsiClusterConfig& cfg) {
    if (!cfg.processingPowerOk) return false;
    return distinctNeighborsWithin(heard, egoPos, cfg.joinDistance, now,
                                   cfg.timeClusterContinuity) >=
           static_cast<int>(cfg.minNeighborsToForm);
}

bool evaluateJoin(const KinematicState& ego, const ClusterAdvert& advert,
                  const EtsiClusterConfig& cfg) {
    if (advert.memberCount >= cfg.maxMembers) return false;
    if (distance(ego.position, advert.leaderKinematics.position) > cfg.joinDistance) return false;
    const double leaderSpeed = advert.leaderKinematics.speedMps;
    const double relDiff = std::fabs(ego.speedMps - leaderSpeed) / std::max(leaderSpeed, 1e-9);
    return relDiff <= cfg.speedHomogeneity;
}

MemberDecision memberTick(Seconds now, Seconds lastLeaderVamTime, Point2 egoPos, Point2 leaderPos,
                          const EtsiClusterConfig& cfg) {
    if (now - lastLeaderVamTime > cfg.timeClusterContinuity) return MemberDecision::LeaveLeaderLost;
    if (distance(egoPos, leaderPos) > cfg.joinDistance) return MemberDecision::LeaveOutOfRange;
    return MemberDecision::Stay;
}

EtsiStation::EtsiStation(StationId id, std::uint32_t idx, EtsiClusterConfig cfg,
                         TriggerConfig trigCfg, EngineHooks* hooks)
    : id_(id), idx_(idx), cfg_(cfg), trigCfg_(trigCfg), hooks_(hooks) {}

void EtsiStation::setMode(Seconds now, VbsMode to, TransitionCause cause) {
    hooks_->recordTransition(idx_, now, mode_, to, cause);
    mode_ = to;
}

void EtsiStation::emit(Seconds now, const KinematicState& kin,
                       std::optional<EtsiClusterContainer> container) {
    hooks_->emitVam(idx_, now, kin, std::nullopt, std::move(container));
    trig_ = resetTriggers(trig_, now, kin);
}

EtsiClusterContainer EtsiStation::leaderContainer(ClusterOp op, const KinematicState& kin) const {
    EtsiClusterContainer c;
    c.clusterId = runtime_.clusterId;
    c.shape = CoverageOffer{kin.position, cfg_.joinDistance};
    c.operation = op;
    c.memberCount = static_cast<std::uint32_t>(runtime_.members.size());
    return c;
}

void EtsiStation::activate(Seconds now, const KinematicState& kin) {
    if (mode_ != VbsMode::Idle) return;
    activatedAt_ = now;
    trig_ = resetTriggers(trig_, now, kin);
    setMode(now, VbsMode::ActiveStandalone, TransitionCause::Activate);
    emit(now, kin, std::nullopt);
}

void EtsiStation::deactivate(Seconds now) {
    if (mode_ == VbsMode::Idle) return;
    setMode(now, VbsMode::Idle, TransitionCause::Deactivate);
    pendingJoin_.reset();
    knownClusters_.clear();
    heard_.clear();
}

void EtsiStation::sendJoinRequest(Seconds now, const KinematicState& kin,
                                  const ClusterAdvert& advert) {
    EtsiClusterContainer c;
    c.clusterId = advert.clusterId;
    c.shape = CoverageOffer{kin.position, cfg_.joinDistance};
    c.operation = ClusterOp::JoinRequest;
    c.targetCluster = advert.leader;
    emit(now, kin, std::move(c));
}

void EtsiStation::pruneObservations(Seconds now) {
    pruneHeard(heard_, now, cfg_.timeClusterContinuity);
    std::erase_if(knownClusters_, [&](const auto& kv) {
        return kv.second.heardAt < now - cfg_.timeClusterContinuity;
    });
}

void EtsiStation::tick(Seconds now, const KinematicState& kin) {
    if (mode_ == VbsMode::Idle) return;
    pruneObservations(now);

    switch (mode_) {
        case VbsMode::ActiveStandalone: {
            if (pendingJoin_) {
                if (now - pendingJoin_->firstRequestAt > cfg_.timeClusterJoinNotification) {
                    pendingJoin_.reset();  // unconfirmed, stay standalone
                } else if (pendingJoin_->requestsSent == 1 &&
                           now - pendingJoin_->firstRequestAt >= 2.0 * cfg_.timeClusterJoinSuccess) {
                    auto it = knownClusters_.find(pendingJoin_->clusterId);
                    if (it != knownClusters_.end()) {
                        sendJoinRequest(now, kin, it->second);
                        pendingJoin_->requestsSent = 2;
                    }
                }
            } else {
                // Prefer joining the closest advertised cluster; create one
                // only after having scanned for the deliberation period.
                const ClusterAdvert* best = nullptr;
                double bestDist = 0.0;
                for (const auto& [cid, advert] : knownClusters_) {
                    if (!evaluateJoin(kin, advert, cfg_)) continue;
                    const double d = distance(kin.position, advert.leaderKinematics.position);
                    if (!best || d < bestDist) {
                        best = &advert;
                        bestDist = d;
                    }
                }
                if (best) {
                    sendJoinRequest(now, kin, *best);
                    pendingJoin_ = PendingJoin{best->clusterId, best->leader, now, 1};
                } else if (now - activatedAt_ >= cfg_.formationDeliberation() - 1e-9 &&
                           evaluateFormation(heard_, kin.position, now, cfg_)) {
                    runtime_ = EtsiClusterRuntime{};
                    runtime_.clusterId = hooks_->allocateClusterId();
                    runtime_.leader = id_;
                    runtime_.lastLeaderVamTime = now;
                    leadSince_ = now;
                    emptySince_ = now;
                    setMode(now, VbsMode::ActiveClusterLeader, TransitionCause::EtsiForm);
                    emit(now, kin, leaderContainer(ClusterOp::Lead, kin));
                    runtime_.lastLeaderVamTime = now;
                    break;
                }
            }
            if (checkTriggers(trig_, now, kin, trigCfg_) == TriggerDecision::Fire)
                emit(now, kin, std::nullopt);
            break;
        }
        case VbsMode::ActiveClusterLeader: {
            // Confirm pending joins before the oldest request's deadline;
            // one confirm covers everyone pending.
            if (!runtime_.pendingJoins.empty()) {
                Seconds oldest = runtime_.pendingJoins.begin()->second;
                for (const auto& [sid, t] : runtime_.pendingJoins) oldest = std::min(oldest, t);
                if (now >= oldest + cfg_.timeClusterJoinSuccess - cfg_.confirmSafety) {
                    auto c = leaderContainer(ClusterOp::JoinConfirm, kin);
                    for (const auto& [sid, t] : runtime_.pendingJoins) {
                        c.memberList.push_back(sid);
                        runtime_.members.insert(sid);
                    }
                    c.memberCount = static_cast<std::uint32_t>(runtime_.members.size());
                    runtime_.pendingJoins.clear();
                    emit(now, kin, std::move(c));
                    runtime_.lastLeaderVamTime = now;
                    break;
                }
            }
            if (runtime_.members.empty() && runtime_.pendingJoins.empty() &&
                now - emptySince_ >= cfg_.emptyClusterPatience()) {
                breakUp(now, kin);
                break;
            }
            // Keep-alive unified with kinematic VAMs: an emission of either
            // kind resets both clocks. The epsilon keeps the k*interval check
            // grid from slipping the deadline by a whole tick.
            const bool keepAliveDue =
                now - runtime_.lastLeaderVamTime >= cfg_.timeClusterContinuity - 1e-9;
            const bool kinematicDue = checkTriggers(trig_, now, kin, trigCfg_) == TriggerDecision::Fire;
            if (keepAliveDue || kinematicDue) {
                emit(now, kin, leaderContainer(ClusterOp::KeepAlive, kin));
                runtime_.lastLeaderVamTime = now;
            }
            break;
        }
        case VbsMode::Passive: {
            const auto decision =
                memberTick(now, lastLeaderVam_, kin.position, leaderKin_.position, cfg_);
            if (decision != MemberDecision::Stay) {
                EtsiClusterContainer c;
                c.clusterId = myClusterId_;
                c.shape = CoverageOffer{kin.position, cfg_.joinDistance};
                c.operation = ClusterOp::Leave;
                c.leaveReason = decision == MemberDecision::LeaveLeaderLost
                                    ? LeaveReason::LeaderLost
                                    : LeaveReason::OutOfRange;
                setMode(now, VbsMode::ActiveStandalone, TransitionCause::EtsiLeave);
                emit(now, kin, std::move(c));
            }
            break;
        }
        default:
            break;
    }
}

void EtsiStation::onVamReceived(Seconds now, const KinematicState& egoKin, const Vam& vam) {
    if (mode_ == VbsMode::Idle) return;
    heard_.push_back({vam.sender, vam.kinematics, now});
    if (!vam.clusterContainer) return;
    const auto& c = *vam.clusterContainer;

    switch (mode_) {
        case VbsMode::ActiveStandalone: {
            if (c.operation == ClusterOp::Lead || c.operation == ClusterOp::KeepAlive ||
                c.operation == ClusterOp::JoinConfirm) {
                knownClusters_[c.clusterId] =
                    ClusterAdvert{c.clusterId, vam.sender, vam.kinematics, c.memberCount, now};
            } else if (c.operation == ClusterOp::BreakUp) {
                knownClusters_.erase(c.clusterId);
                if (pendingJoin_ && pendingJoin_->clusterId == c.clusterId) pendingJoin_.reset();
            }
            if (c.operation == ClusterOp::JoinConfirm && pendingJoin_ &&
                pendingJoin_->clusterId == c.clusterId &&
                std::find(c.memberList.begin(), c.memberList.end(), id_) != c.memberList.end()) {
                myClusterId_ = c.clusterId;
                myLeader_ = vam.sender;
                lastLeaderVam_ = now;
                leaderKin_ = vam.kinematics;
                pendingJoin_.reset();
                setMode(now, VbsMode::Passive, TransitionCause::EtsiJoin);
                trig_ = resetTriggers(trig_, now, egoKin);
            }
            break;
        }
        case VbsMode::ActiveClusterLeader: {
            if (c.operation == ClusterOp::JoinRequest && c.targetCluster &&
                *c.targetCluster == id_) {
                if (runtime_.members.size() + runtime_.pendingJoins.size() <
                        cfg_.maxMembers &&
                    !runtime_.members.contains(vam.sender)) {
                    runtime_.pendingJoins.emplace(vam.sender, now);
                }
            } else if (c.operation == ClusterOp::Leave && c.clusterId == runtime_.clusterId) {
                runtime_.members.erase(vam.sender);
                if (runtime_.members.empty()) emptySince_ = now;
            }
            break;
        }
        case VbsMode::Passive: {
            if (vam.sender != myLeader_) break;
            if (c.operation == ClusterOp::BreakUp) {
                setMode(now, VbsMode::ActiveStandalone, TransitionCause::EtsiBreakupMember);
                trig_ = resetTriggers(trig_, now, egoKin);
            } else {
                lastLeaderVam_ = now;
                leaderKin_ = vam.kinematics;
            }
            break;
        }
        default:
            break;
    }
}

void EtsiStation::breakUp(Seconds now, const KinematicState& kin) {
    if (mode_ != VbsMode::ActiveClusterLeader) return;
    auto c = leaderContainer(ClusterOp::BreakUp, kin);
    setMode(now, VbsMode::ActiveStandalone, TransitionCause::EtsiBreakupLeader);
    emit(now, kin, std::move(c));
    runtime_ = EtsiClusterRuntime{};
    activatedAt_ = now;  // scan again before re-forming
}

}  // namespace vamsim
