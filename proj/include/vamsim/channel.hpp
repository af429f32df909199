#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vamsim/core.hpp"
#include "vamsim/rng.hpp"

namespace vamsim {

struct PhyConfig {
    double frequencyHz = 5.9e9;
    double bandwidthHz = 10e6;
    double dataRateBps = 6e6;
    double txPowerPedestrianW = 0.016;
    double txPowerVehicleW = 0.020;
    double antennaHeightPedestrianM = 1.5;
    double antennaHeightVehicleM = 1.5;
    double receptionThresholdDbm = -92.0;   // 16 mW pedestrian reaches ~620 m
    double carrierSenseThresholdDbm = -96.0;
    double captureMarginDb = 10.0;
    double phyOverheadSeconds = 40e-6;      // preamble + PHY header
    double groundPermittivity = 1.02;
    void validate() const;
};

struct MacConfig {
    Seconds slotTime = 13e-6;
    Seconds aifs = 58e-6;
    std::uint32_t contentionWindow = 15;  // backoff drawn from [0, CW-1]
    void validate() const;
};

double wattsToDbm(double watts);
double dbmToWatts(double dbm);

/// Two-ray interference model: phasor sum of the direct and ground-reflected
/// rays with a grazing-angle reflection coefficient. Free-space-like at short
/// range, d^4 decay beyond the crossover distance 4*pi*ht*hr/lambda.
double receivedPowerDbm(Point2 txPos, double txHeightM, double txPowerW,
                        Point2 rxPos, double rxHeightM, const PhyConfig& cfg);

/// Pedestrian-to-pedestrian convenience wrapper.
double pathLossTwoRay(Point2 txPos, Point2 rxPos, const PhyConfig& cfg);

double frameAirtime(std::uint32_t sizeBytes, const PhyConfig& cfg);

enum class FrameKind : std::uint8_t { Vam, Cam };

struct Frame {
    std::uint64_t id = 0;
    std::uint32_t senderIdx = 0;
    FrameKind kind = FrameKind::Vam;
    std::uint32_t sizeBytes = 0;
    Seconds queuedAt = 0.0;
    std::optional<Vam> vam;
};

enum class RxOutcome : std::uint8_t { Ok, Collided, BelowThreshold };

struct ReceptionEvent {
    std::uint32_t receiverIdx = 0;
    RxOutcome outcome = RxOutcome::Ok;
    double powerDbm = 0.0;
    double distanceM = 0.0;
};

struct ChannelStats {
    std::uint64_t framesSent = 0;
    std::uint64_t receptionsOk = 0;
    std::uint64_t receptionsCollided = 0;
    std::uint64_t receptionsBelowThreshold = 0;

    /// ok / (ok + collided): successes over in-range reception opportunities.
    double pdr() const {
        const auto opportunities = receptionsOk + receptionsCollided;
        return opportunities == 0 ? 1.0 : static_cast<double>(receptionsOk) / opportunities;
    }
};

/// Lossy broadcast medium: per-station carrier sensing against the current
/// set of in-air frames, AIFS + frozen random backoff, per-receiver capture
/// arbitration at frame end. No ACKs, no retransmissions. The engine owns the
/// event clock; this class answers "when may station X start" and "who
/// received frame Y" and stays event-agnostic.
class BroadcastChannel {
public:
    struct StationRadio {
        Point2 position;
        double heightM = 1.5;
        double powerW = 0.016;
        bool enabled = true;
    };

    struct ScheduleCmd {
        std::uint32_t station = 0;
        Seconds when = 0.0;
        std::uint64_t generation = 0;
    };

    BroadcastChannel(PhyConfig phy, MacConfig mac, std::uint64_t runSeed,
                     std::size_t nStations, bool lossless);

    void setPosition(std::uint32_t station, Point2 p) { radios_[station].position = p; }
    void setRadio(std::uint32_t station, double heightM, double powerW);
    void setEnabled(std::uint32_t station, bool enabled) { radios_[station].enabled = enabled; }
    const StationRadio& radio(std::uint32_t station) const { return radios_[station]; }

    /// Queue a frame; returns the TxStart command to schedule when the medium
    /// is idle at the station, nothing when it must defer.
    std::vector<ScheduleCmd> enqueue(std::uint32_t station, Frame frame, Seconds now);

    struct StartResult {
        bool valid = false;       // stale generation: ignore
        std::uint64_t frameId = 0;
        Seconds endTime = 0.0;
    };
    StartResult onTxStart(std::uint32_t station, std::uint64_t generation, Seconds now);

    struct EndResult {
        Frame frame;
        Seconds startTime = 0.0;
        Point2 txPosition;
        std::vector<ReceptionEvent> receptions;   // enabled stations, sender excluded
        std::vector<ScheduleCmd> resume;          // deferred stations now counting down
    };
    EndResult onTxEnd(std::uint64_t frameId, Seconds now);

    bool busy(std::uint32_t station, Seconds now) const { return sensedBusy(station, now); }
    bool transmitting(std::uint32_t station) const;
    const ChannelStats& stats() const { return stats_; }

private:
    enum class MacState : std::uint8_t { Idle, Counting, WaitingIdle, Transmitting };
    struct Mac {
        std::deque<Frame> queue;
        MacState state = MacState::Idle;
        std::uint64_t generation = 0;
        Seconds countStart = 0.0;
        Seconds plannedStart = 0.0;
        std::uint32_t backoffRemaining = 0;
        bool backoffDrawn = false;
        Rng rng{0};
    };
    struct InAir {
        std::uint64_t frameId;
        std::uint32_t sender;
        Seconds start;
        Seconds end;
        Point2 txPosition;
        double txHeightM;
        double txPowerW;
        Frame frame;
    };

    bool sensedBusy(std::uint32_t station, Seconds now) const;
    std::optional<ScheduleCmd> tryStart(std::uint32_t station, Seconds now);
    double powerAt(const InAir& t, std::uint32_t station) const;

    PhyConfig phy_;
    MacConfig mac_;
    bool lossless_;
    std::vector<StationRadio> radios_;
    std::vector<Mac> macs_;
    std::vector<InAir> active_;
    std::vector<InAir> ended_;   // retained while they can still overlap a live frame
    std::uint64_t nextFrameId_ = 1;
    double maxAirtime_ = 0.0;
    ChannelStats stats_;
};

/// Closed-form broadcast PDR approximation: Poisson-ish senders on a shared
/// CSMA channel, collisions within a sensing vulnerability window, arrival
/// intensity compressed into the idle fraction of the channel.
///   PDR = exp(-(n-1) * rate * W / (1 - rho)),  rho = min(n*rate*T, 0.98)
/// with W = aifs + 2 slots. Exactly 1 for a single sender, strictly
/// decreasing in station count and rate.
double analyticalPdr(int nStations, double msgRateHz, double frameAirtimeS, const MacConfig& mac);

/// Parameters behind the numerical-evaluation table: a short segment where
/// every node hears every other, two pedestrian separations, per-separation
/// cluster sizes, message rate at the VAM upper bound (contention stress).
struct PdrTableParams {
    std::vector<double> separationsM = {4.0, 2.0};
    std::vector<int> clusterSizes = {12, 20};   // paired with separationsM
    double segmentLengthM = 50.0;
    double abreastPerSidewalk = 4.0;            // two sidewalks, four abreast
    double msgRateHz = 10.0;
    double etsiRateFactor = 1.5;                // 2 s keep-alive vs 3 s kinematic
    VamSizing sizing;
    PhyConfig phy;
    MacConfig mac;

    int stationsFor(double separationM) const;
};

struct PdrTableRow {
    std::string scheme;
    std::vector<double> pdr;  // one column per separation
};

std::vector<PdrTableRow> buildPdrTable(const PdrTableParams& params);

}  // namespace vamsim
