#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vamsim/core.hpp"
#include "vamsim/station.hpp"
#include "vamsim/trigger.hpp"

namespace vamsim {

struct EtsiClusterConfig {
    std::uint32_t maxMembers = 20;
    std::uint32_t minNeighborsToForm = 3;
    double joinDistance = 5.0;          // m, also the advertised cluster radius
    double speedHomogeneity = 0.05;     // relative to the leader's speed
    Seconds timeClusterContinuity = 2.0;
    Seconds timeClusterJoinNotification = 3.0;
    Seconds timeClusterJoinSuccess = 0.5;
    bool processingPowerOk = true;
    Seconds confirmSafety = 0.1;        // confirm this early before the deadline

    /// A station scans for joinable clusters this long before creating one.
    Seconds formationDeliberation() const { return timeClusterJoinNotification; }
    /// A leader with no members gives up after this long.
    Seconds emptyClusterPatience() const { return 2.0 * timeClusterContinuity; }

    void validate() const;
};

struct EtsiClusterRuntime {
    std::uint32_t clusterId = 0;
    StationId leader = 0;
    std::set<StationId> members;
    Seconds lastLeaderVamTime = 0.0;
    std::map<StationId, Seconds> pendingJoins;  // requester -> requestTime
};

/// What a cluster VAM tells prospective joiners.
struct ClusterAdvert {
    std::uint32_t clusterId = 0;
    StationId leader = 0;
    KinematicState leaderKinematics;
    std::uint32_t memberCount = 0;
    Seconds heardAt = 0.0;
};

/// Transition (5): enough distinct close neighbors heard recently, processing
/// power available. The caller guarantees "no cluster to join".
bool evaluateFormation(const std::deque<NeighborObservation>& heard, Point2 egoPos, Seconds now,
                       const EtsiClusterConfig& cfg);

/// Transition (3): close enough, speed within the homogeneity bound relative
/// to the leader's advertised speed, cluster not full.
bool evaluateJoin(const KinematicState& ego, const ClusterAdvert& advert,
                  const EtsiClusterConfig& cfg);

enum class MemberDecision : std::uint8_t { Stay, LeaveLeaderLost, LeaveOutOfRange };

/// Transition (4): leader silent past the continuity deadline, or the
/// kinematic join conditions no longer hold.
MemberDecision memberTick(Seconds now, Seconds lastLeaderVamTime, Point2 egoPos, Point2 leaderPos,
                          const EtsiClusterConfig& cfg);

/// Baseline negotiated clustering: join requests, confirmation deadlines,
/// keep-alive cadence, explicit leave and break-up messages.
class EtsiStation {
public:
    EtsiStation(StationId id, std::uint32_t idx, EtsiClusterConfig cfg, TriggerConfig trigCfg,
                EngineHooks* hooks);

    void activate(Seconds now, const KinematicState& kin);
    void deactivate(Seconds now);
    void tick(Seconds now, const KinematicState& kin);
    void onVamReceived(Seconds now, const KinematicState& egoKin, const Vam& vam);
    /// Transition (6), also scriptable ("keep the cluster alive for 30 s").
    void breakUp(Seconds now, const KinematicState& kin);

    VbsMode mode() const { return mode_; }
    StationId id() const { return id_; }
    const EtsiClusterRuntime& runtime() const { return runtime_; }
    Seconds leadSince() const { return leadSince_; }
    const TriggerState& triggerState() const { return trig_; }

private:
    void emit(Seconds now, const KinematicState& kin, std::optional<EtsiClusterContainer> container);
    EtsiClusterContainer leaderContainer(ClusterOp op, const KinematicState& kin) const;
    void sendJoinRequest(Seconds now, const KinematicState& kin, const ClusterAdvert& advert);
    void setMode(Seconds now, VbsMode to, TransitionCause cause);
    void pruneObservations(Seconds now);

    StationId id_;
    std::uint32_t idx_;
    EtsiClusterConfig cfg_;
    TriggerConfig trigCfg_;
    EngineHooks* hooks_;

    VbsMode mode_ = VbsMode::Idle;
    TriggerState trig_;
    Seconds activatedAt_ = 0.0;

    std::deque<NeighborObservation> heard_;
    std::map<std::uint32_t, ClusterAdvert> knownClusters_;

    // leader
    EtsiClusterRuntime runtime_;
    Seconds leadSince_ = 0.0;
    Seconds emptySince_ = 0.0;

    // member (Passive)
    std::uint32_t myClusterId_ = 0;
    StationId myLeader_ = 0;
    Seconds lastLeaderVam_ = 0.0;
    KinematicState leaderKin_;

    // joiner
    struct PendingJoin {
        std::uint32_t clusterId = 0;
        StationId leader = 0;
        Seconds firstRequestAt = 0.0;
        int requestsSent = 0;
    };
    std::optional<PendingJoin> pendingJoin_;
};

}  // namespace vamsim
