#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace vamsim {

using StationId = std::uint32_t;
using Seconds = double;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

/// Euclidean distance on the flat 2-D plane.
double distance(Point2 a, Point2 b);

/// Normalize an angle in degrees to [0, 360).
double normalizeHeading(double degrees);

/// Smallest angular difference between two headings, in [0, 180].
double headingDeltaDeg(double aDeg, double bDeg);

struct KinematicState {
    Point2 position;      // meters
    double speedMps = 0.0;
    double headingDeg = 0.0;  // [0, 360), 0 = +x, counterclockwise
};

/// Circle a station broadcasts to announce vicarious representation.
struct CoverageOffer {
    Point2 center;
    double radiusM = 0.0;
};

/// Boundary is inclusive: a point at exactly radiusM is covered.
bool withinCoverage(Point2 p, const CoverageOffer& offer);

enum class ClusterOp : std::uint8_t {
    Lead,
    JoinRequest,
    JoinConfirm,
    KeepAlive,
    Leave,
    BreakUp,
};

enum class LeaveReason : std::uint8_t {
    OutOfRange,
    LeaderLost,
    RoleChange,
    Other,
};

const char* toString(ClusterOp op);
const char* toString(LeaveReason r);

/// Negotiated-clustering container carried inside a VAM (baseline scheme only).
struct EtsiClusterContainer {
    std::uint32_t clusterId = 0;
    CoverageOffer shape;
    ClusterOp operation = ClusterOp::KeepAlive;
    std::uint32_t memberCount = 0;
    std::vector<StationId> memberList;              // JoinConfirm only
    std::optional<LeaveReason> leaveReason;         // Leave only
    std::optional<StationId> targetCluster;         // JoinRequest: leader being asked
};

struct VamSizing {
    std::uint32_t baseBytes = 190;
    std::uint32_t clusterBytes = 240;
};

struct Vam {
    StationId sender = 0;
    Seconds generationTime = 0.0;
    KinematicState kinematics;
    std::optional<CoverageOffer> coverage;           // implicit scheme
    std::optional<EtsiClusterContainer> clusterContainer;  // negotiated scheme
    std::uint32_t sizeBytes = 0;

    bool hasClusterContainer() const { return clusterContainer.has_value(); }
};

/// Sizes a VAM; the implicit scheme's coverage offer reuses existing fields
/// and keeps the base size, a cluster container grows the message.
std::uint32_t vamSizeBytes(const Vam& vam, const VamSizing& sizing);

/// Station protocol state per the VRU state table. Idle neither runs the
/// service nor transmits; Passive transmits only to leave its cluster;
/// ActiveClusterMember transmits only after a leader timeout.
enum class VbsMode : std::uint8_t {
    Idle,
    ActiveStandalone,
    ActiveClusterLeader,
    ActiveClusterMember,
    Passive,
};

const char* toString(VbsMode m);

}  // namespace vamsim
