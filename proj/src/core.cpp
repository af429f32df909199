#include "vamsim/core.hpp"

namespace vamsim {

double distance(Point2 a, Point2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double normalizeHeading(double degrees) {
    double h = std::fmod(degrees, 360.0);
    if (h < 0.0) h += 360.0;
    return h;
}

double headingDeltaDeg(double aDeg, double bDeg) {
    double d = std::fabs(normalizeHeading(aDeg) - normalizeHeading(bDeg));
    return d > 180.0 ? 360.0 - d : d;
}

bool withinCoverage(Point2 p, const CoverageOffer& offer) {
    return distance(p, offer.center) <= offer.radiusM;
}

std::uint32_t vamSizeBytes(const Vam& vam, const VamSizing& sizing) {
    return vam.hasClusterContainer() ? sizing.clusterBytes : sizing.baseBytes;
}

const char* toString(ClusterOp op) {
    switch (op) {
        case ClusterOp::Lead: return "Lead";
        case ClusterOp::JoinRequest: return "JoinRequest";
        case ClusterOp::JoinConfirm: return "JoinConfirm";
        case ClusterOp::KeepAlive: return "KeepAlive";
        case ClusterOp::Leave: return "Leave";
        case ClusterOp::BreakUp: return "BreakUp";
    }
    return "?";
}

const char* toString(LeaveReason r) {
    switch (r) {
        case LeaveReason::OutOfRange: return "OutOfRange";
        case LeaveReason::LeaderLost: return "LeaderLost";
        case LeaveReason::RoleChange: return "RoleChange";
        case LeaveReason::Other: return "Other";
    }
    return "?";
}

const char* toString(VbsMode m) {
    switch (m) {
        case VbsMode::Idle: return "Idle";
        case VbsMode::ActiveStandalone: return "ActiveStandalone";
        case VbsMode::ActiveClusterLeader: return "ActiveClusterLeader";
        case VbsMode::ActiveClusterMember: return "ActiveClusterMember";
        case VbsMode::Passive: return "Passive";
    }
    return "?";
}

}  // namespace vamsim
