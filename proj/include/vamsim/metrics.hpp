#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vamsim/core.hpp"

namespace vamsim {

enum class Scheme : std::uint8_t { Standalone, EtsiCluster, ImplicitCluster };
const char* toString(Scheme s);
std::optional<Scheme> schemeFromString(const std::string& s);

struct ReceptionSample {
    Seconds time = 0.0;
    double distanceM = 0.0;
};

struct TxRecord {
    StationId sender = 0;
    Seconds time = 0.0;
    bool isVam = true;
    bool hasCoverage = false;
    std::optional<ClusterOp> clusterOp;
    std::uint32_t sizeBytes = 0;
};

/// Everything the metric operations consume. Generations and receptions cover
/// the measurement window; awareness events start one window early so the
/// first evaluation instants have a full trailing window; transmissions span
/// the whole run (message accounting needs the formation phase).
struct MetricLog {
    int vruCount = 0;
    Seconds windowStart = 0.0;
    Seconds windowEnd = 0.0;
    std::vector<std::vector<Seconds>> generations;  // per VRU station
    std::map<std::pair<StationId, StationId>, std::vector<ReceptionSample>> receptions;
    std::vector<std::vector<Seconds>> awarenessEvents;  // direct or vicarious
    std::vector<TxRecord> transmissions;
};

/// Gaps between consecutive successful receptions of `sender` at `receiver`.
std::vector<double> computeIpg(const MetricLog& log, StationId receiver, StationId sender);

/// Gaps between consecutive generations at one station.
std::vector<double> computeIgg(const MetricLog& log, StationId station);

struct IpgBin {
    int bin = 0;        // [bin*width, (bin+1)*width)
    double meanGap = 0.0;
    std::size_t count = 0;
};

/// Per-pair gaps pooled into distance bins (distance at the closing
/// reception), for Fig. 5-style output.
std::vector<IpgBin> ipgByDistanceBin(const MetricLog& log, double binWidthM = 100.0);

/// All generation gaps pooled across stations.
std::vector<double> pooledIggGaps(const MetricLog& log);

/// Fraction of VRUs with at least one successful broadcast (direct or
/// vicarious) within the trailing window, per evaluation instant.
std::vector<double> computeAwareness(const MetricLog& log, std::span<const Seconds> evalTimes,
                                     Seconds window);

struct AccountingAssumptions {
    Seconds durationS = 30.0;
    Seconds leaderIggS = 3.0;
    int nMembers = 5;
    int joinConfirmBatches = 1;  // 1..nMembers messages confirm the joins
};

/// The expected-message arithmetic for the 30 s lifecycle scenario, lossless:
/// standalone = everyone's kinematic VAMs; negotiated clustering adds lead
/// offer, join requests, confirms and break-up on top of the leader's stream;
/// implicit needs the leader's kinematic VAMs alone.
int accountMessages(Scheme scheme, const AccountingAssumptions& a = {});

struct Summary {
    double mean = 0.0;
    double ciHalfWidth = 0.0;
    bool ciAvailable = false;
    std::size_t n = 0;
};

/// Mean with a two-sided 95% Student-t interval over repetition values.
Summary summarize(std::span<const double> values);

double mean(std::span<const double> values);

}  // namespace vamsim
