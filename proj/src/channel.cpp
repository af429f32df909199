#include "vamsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vamsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;
}  // namespace

void PhyConfig::validate() const {
    if (dataRateBps <= 0.0) throw std::invalid_argument("phy.dataRateBps must be > 0");
    if (frequencyHz <= 0.0) throw std::invalid_argument("phy.frequencyHz must be > 0");
    if (carrierSenseThresholdDbm > receptionThresholdDbm)
        throw std::invalid_argument("phy: carrier sense threshold must be <= reception threshold");
    if (groundPermittivity < 1.0) throw std::invalid_argument("phy.groundPermittivity must be >= 1");
}

void MacConfig::validate() const {
    if (slotTime <= 0.0 || aifs <= 0.0 || contentionWindow == 0)
        throw std::invalid_argument("mac: slotTime, aifs and contentionWindow must be positive");
}

double wattsToDbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }
double dbmToWatts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double receivedPowerDbm(Point2 txPos, double txHeightM, double txPowerW,
                        Point2 rxPos, double rxHeightM, const PhyConfig& cfg) {
    const double d = distance(txPos, rxPos);
    if (d <= 0.0) throw std::invalid_argument("receivedPowerDbm: coincident positions");

    const double lambda = kSpeedOfLight / cfg.frequencyHz;
    const double dLos = std::hypot(d, txHeightM - rxHeightM);
    const double dRef = std::hypot(d, txHeightM + rxHeightM);

    // Grazing-angle reflection coefficient, perpendicular polarization.
    const double sinTheta = (txHeightM + rxHeightM) / dRef;
    const double cosTheta = d / dRef;
    const double z = std::sqrt(std::max(cfg.groundPermittivity - cosTheta * cosTheta, 0.0));
    const double gamma = (sinTheta - z) / (sinTheta + z);

    const double phi = 2.0 * kPi * (dRef - dLos) / lambda;
    const double mag2 = 1.0 / (dLos * dLos) + gamma * gamma / (dRef * dRef) +
                        2.0 * gamma * std::cos(phi) / (dLos * dRef);

    const double scale = lambda / (4.0 * kPi);
    const double prW = txPowerW * scale * scale * std::max(mag2, 1e-30);
    return wattsToDbm(std::min(prW, txPowerW));
}

double pathLossTwoRay(Point2 txPos, Point2 rxPos, const PhyConfig& cfg) {
    return receivedPowerDbm(txPos, cfg.antennaHeightPedestrianM, cfg.txPowerPedestrianW,
                            rxPos, cfg.antennaHeightPedestrianM, cfg);
}

double frameAirtime(std::uint32_t sizeBytes, const PhyConfig& cfg) {
    return static_cast<double>(sizeBytes) * 8.0 / cfg.dataRateBps + cfg.phyOverheadSeconds;
}

BroadcastChannel::BroadcastChannel(PhyConfig phy, MacConfig mac, std::uint64_t runSeed,
                                   std::size_t nStations, bool lossless)
    : phy_(phy), mac_(mac), lossless_(lossless) {
    phy_.validate();
    mac_.validate();
    radios_.resize(nStations);
    macs_.resize(nStations);
    for (std::size_t i = 0; i < nStations; ++i)
        macs_[i].rng = streamFor(runSeed, static_cast<std::uint32_t>(i), RngPurpose::Backoff);
}

void BroadcastChannel::setRadio(std::uint32_t station, double heightM, double powerW) {
    radios_[station].heightM = heightM;
    radios_[station].powerW = powerW;
}

double BroadcastChannel::powerAt(const InAir& t, std::uint32_t station) const {
    return receivedPowerDbm(t.txPosition, t.txHeightM, t.txPowerW, radios_[station].position,
                            radios_[station].heightM, phy_);
}

bool BroadcastChannel::sensedBusy(std::uint32_t station, Seconds) const {
    if (lossless_) return false;
    for (const auto& t : active_) {
        if (t.sender == station) continue;
        if (powerAt(t, station) >= phy_.carrierSenseThresholdDbm) return true;
    }
    return false;
}

bool BroadcastChannel::transmitting(std::uint32_t station) const {
    return macs_[station].state == MacState::Transmitting;
}

std::optional<BroadcastChannel::ScheduleCmd> BroadcastChannel::tryStart(std::uint32_t station,
                                                                        Seconds now) {
    auto& mac = macs_[station];
    if (mac.queue.empty() || mac.state == MacState::Transmitting) return std::nullopt;
    if (sensedBusy(station, now)) {
        if (!mac.backoffDrawn) {
            mac.backoffRemaining = mac.rng.uniformInt(mac_.contentionWindow);
            mac.backoffDrawn = true;
        }
        mac.state = MacState::WaitingIdle;
        return std::nullopt;
    }
    mac.state = MacState::Counting;
    mac.countStart = now;
    mac.plannedStart = now + mac_.aifs + static_cast<double>(mac.backoffRemaining) * mac_.slotTime;
    ++mac.generation;
    return ScheduleCmd{station, mac.plannedStart, mac.generation};
}

std::vector<BroadcastChannel::ScheduleCmd> BroadcastChannel::enqueue(std::uint32_t station,
                                                                     Frame frame, Seconds now) {
    auto& mac = macs_[station];
    frame.id = nextFrameId_++;
    frame.queuedAt = now;
    mac.queue.push_back(std::move(frame));
    std::vector<ScheduleCmd> cmds;
    if (mac.state == MacState::Idle) {
        if (auto cmd = tryStart(station, now)) cmds.push_back(*cmd);
    }
    return cmds;
}

BroadcastChannel::StartResult BroadcastChannel::onTxStart(std::uint32_t station,
                                                          std::uint64_t generation, Seconds now) {
    auto& mac = macs_[station];
    if (mac.state != MacState::Counting || mac.generation != generation) return {};

    Frame frame = std::move(mac.queue.front());
    mac.queue.pop_front();
    mac.state = MacState::Transmitting;
    mac.backoffRemaining = 0;
    mac.backoffDrawn = false;
    ++mac.generation;

    const double airtime = frameAirtime(frame.sizeBytes, phy_);
    InAir t{frame.id,     station,
            now,          now + airtime,
            radios_[station].position, radios_[station].heightM,
            radios_[station].powerW,   std::move(frame)};
    const auto frameId = t.frameId;
    const auto end = t.end;
    active_.push_back(std::move(t));
    maxAirtime_ = std::max(maxAirtime_, airtime);
    ++stats_.framesSent;

    // Freeze countdowns at stations that can hear this start in time. A start
    // less than one slot away is committed: carrier sensing cannot react
    // within a slot, which is exactly how near-simultaneous starts collide.
    if (!lossless_) {
        const auto& started = active_.back();
        for (std::uint32_t j = 0; j < macs_.size(); ++j) {
            auto& other = macs_[j];
            if (j == station || other.state != MacState::Counting) continue;
            if (other.plannedStart < now + mac_.slotTime) continue;
            if (powerAt(started, j) < phy_.carrierSenseThresholdDbm) continue;
            const double consumedSlots =
                std::floor((now - (other.countStart + mac_.aifs)) / mac_.slotTime);
            if (consumedSlots > 0.0) {
                const auto consumed = static_cast<std::uint32_t>(consumedSlots);
                other.backoffRemaining -= std::min(other.backoffRemaining, consumed);
            }
            other.state = MacState::WaitingIdle;
            other.backoffDrawn = true;
            ++other.generation;  // cancels the scheduled TxStart
        }
    }
    return {true, frameId, end};
}

BroadcastChannel::EndResult BroadcastChannel::onTxEnd(std::uint64_t frameId, Seconds now) {
    auto it = std::find_if(active_.begin(), active_.end(),
                           [&](const InAir& t) { return t.frameId == frameId; });
    if (it == active_.end()) throw std::logic_error("onTxEnd: unknown frame");

    InAir done = std::move(*it);
    active_.erase(it);
    macs_[done.sender].state = MacState::Idle;

    EndResult result;
    result.startTime = done.start;
    result.txPosition = done.txPosition;

    // Overlap set: still-active frames plus frames that ended during ours.
    std::vector<const InAir*> overlaps;
    for (const auto& t : active_)
        if (t.start < done.end) overlaps.push_back(&t);
    for (const auto& t : ended_)
        if (t.end > done.start && t.start < done.end) overlaps.push_back(&t);

    for (std::uint32_t r = 0; r < radios_.size(); ++r) {
        if (r == done.sender || !radios_[r].enabled) continue;
        ReceptionEvent ev;
        ev.receiverIdx = r;
        ev.distanceM = distance(done.txPosition, radios_[r].position);
        if (lossless_) {
            ev.powerDbm = 0.0;
            ev.outcome = RxOutcome::Ok;
            ++stats_.receptionsOk;
            result.receptions.push_back(ev);
            continue;
        }
        ev.powerDbm = powerAt(done, r);
        if (ev.powerDbm < phy_.receptionThresholdDbm) {
            ev.outcome = RxOutcome::BelowThreshold;
            ++stats_.receptionsBelowThreshold;
            result.receptions.push_back(ev);
            continue;
        }
        bool collided = macs_[r].state == MacState::Transmitting;  // half-duplex
        for (const auto* o : overlaps) {
            if (collided) break;
            if (o->sender == r) {
                collided = true;  // receiver transmitted during our airtime
            } else if (ev.powerDbm < powerAt(*o, r) + phy_.captureMarginDb) {
                collided = true;
            }
        }
        ev.outcome = collided ? RxOutcome::Collided : RxOutcome::Ok;
        (collided ? stats_.receptionsCollided : stats_.receptionsOk) += 1;
        result.receptions.push_back(ev);
    }

    // Retain the ended frame while it can still overlap a live frame.
    ended_.push_back(std::move(done));
    std::erase_if(ended_, [&](const InAir& t) { return t.end <= now - maxAirtime_; });

    // Deferred stations re-sense; simultaneous resumers with equal backoff
    // will pick the same start instant and collide.
    for (std::uint32_t j = 0; j < macs_.size(); ++j) {
        if (macs_[j].state != MacState::WaitingIdle) continue;
        macs_[j].state = MacState::Idle;
        if (auto cmd = tryStart(j, now)) {
            result.resume.push_back(*cmd);
        }
    }
    // The sender itself may have more queued.
    if (auto cmd = tryStart(done.sender, now)) result.resume.push_back(*cmd);

    result.frame = std::move(ended_.back().frame);
    return result;
}

double analyticalPdr(int nStations, double msgRateHz, double frameAirtimeS, const MacConfig& mac) {
    if (nStations < 1) throw std::invalid_argument("analyticalPdr: nStations must be >= 1");
    if (nStations == 1) return 1.0;
    const double window = mac.aifs + 2.0 * mac.slotTime;
    const double rho = std::min(static_cast<double>(nStations) * msgRateHz * frameAirtimeS, 0.98);
    const double exponent =
        static_cast<double>(nStations - 1) * msgRateHz * window / (1.0 - rho);
    return std::exp(-exponent);
}

int PdrTableParams::stationsFor(double separationM) const {
    return static_cast<int>(std::llround(2.0 * abreastPerSidewalk * segmentLengthM / separationM));
}

std::vector<PdrTableRow> buildPdrTable(const PdrTableParams& params) {
    if (params.separationsM.size() != params.clusterSizes.size())
        throw std::invalid_argument("pdr table: one cluster size per separation required");

    const double vamAirtime = frameAirtime(params.sizing.baseBytes, params.phy);
    const double clusterVamAirtime = frameAirtime(params.sizing.clusterBytes, params.phy);

    PdrTableRow standalone{"standalone", {}};
    PdrTableRow etsi{"etsiCluster", {}};
    PdrTableRow implicit{"implicitCluster", {}};

    for (std::size_t c = 0; c < params.separationsM.size(); ++c) {
        const int n = params.stationsFor(params.separationsM[c]);
        const int size = std::max(params.clusterSizes[c], 1);
        const int leaders = (n + size - 1) / size;
        standalone.pdr.push_back(analyticalPdr(n, params.msgRateHz, vamAirtime, params.mac));
        if (size == 1) {
            // Degenerate clustering: nobody groups, both schemes behave standalone.
            etsi.pdr.push_back(standalone.pdr.back());
            implicit.pdr.push_back(standalone.pdr.back());
        } else {
            etsi.pdr.push_back(analyticalPdr(leaders, params.msgRateHz * params.etsiRateFactor,
                                             clusterVamAirtime, params.mac));
            implicit.pdr.push_back(analyticalPdr(leaders, params.msgRateHz, vamAirtime, params.mac));
        }
    }
    return {standalone, etsi, implicit};
}

}  // namespace vamsim
