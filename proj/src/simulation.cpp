#include "vamsim/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace vamsim {

bool RunResult::hasTransition(TransitionCause cause) const {
    return std::any_of(transitions.begin(), transitions.end(),
                       [&](const TransitionRecord& t) { return t.cause == cause; });
}

namespace {
std::vector<PedestrianSpec> makePeds(const ScenarioConfig& cfg, Rng& rng) {
    if (!cfg.pinnedPedestrians.empty()) return cfg.pinnedPedestrians;
    return placePedestrians(cfg.segmentLength, cfg.pedestrianDensity, rng, cfg.mobility);
}
std::vector<VehicleSpec> makeVehicles(const ScenarioConfig& cfg, Rng& rng) {
    if (cfg.lanes == 0 || cfg.vehicleDensity <= 0.0) return {};
    return placeVehicles(cfg.segmentLength, cfg.vehicleDensity, cfg.lanes, cfg.camRateHz, rng,
                         cfg.mobility);
}
}  // namespace

Engine::Engine(const ScenarioConfig& cfg, int repetition)
    : cfg_(cfg),
      runSeed_(cfg.seed ^ static_cast<std::uint64_t>(repetition)),
      peds_([&] {
          Rng rng = streamFor(runSeed_, 0, RngPurpose::Placement);
          return makePeds(cfg, rng);
      }(), cfg.segmentLength, cfg.mobility),
      vehicles_([&] {
          // Separate stream so pedestrian placement is unaffected by lanes.
          Rng rng = streamFor(runSeed_, 1, RngPurpose::Placement);
          return makeVehicles(cfg, rng);
      }(), cfg.segmentLength, cfg.mobility) {
    cfg_.validate();
    nVru_ = static_cast<int>(peds_.size());
    nVeh_ = static_cast<int>(vehicles_.size());
    endTime_ = cfg_.warmupSeconds + cfg_.measureSeconds;

    channel_ = std::make_unique<BroadcastChannel>(cfg_.phy, cfg_.mac, runSeed_,
                                                  static_cast<std::size_t>(stationCount()),
                                                  cfg_.lossless);
    for (int i = 0; i < nVru_; ++i) {
        channel_->setRadio(static_cast<std::uint32_t>(i), cfg_.phy.antennaHeightPedestrianM,
                           cfg_.phy.txPowerPedestrianW);
        channel_->setPosition(static_cast<std::uint32_t>(i), peds_.state(i).position);
    }
    for (int v = 0; v < nVeh_; ++v) {
        const auto idx = static_cast<std::uint32_t>(nVru_ + v);
        channel_->setRadio(idx, cfg_.phy.antennaHeightVehicleM, cfg_.phy.txPowerVehicleW);
        channel_->setPosition(idx, vehicles_.state(v).position);
    }

    standaloneTrig_.resize(nVru_);
    standaloneMode_.assign(nVru_, VbsMode::Idle);
    activationAt_.resize(nVru_);
    activated_.assign(nVru_, false);
    for (int i = 0; i < nVru_; ++i) {
        if (!cfg_.pinnedActivations.empty()) {
            activationAt_[i] = cfg_.pinnedActivations[i];
        } else {
            Rng rng = streamFor(runSeed_, static_cast<std::uint32_t>(i), RngPurpose::Activation);
            activationAt_[i] =
                cfg_.activationSpread > 0.0 ? rng.uniform(0.0, cfg_.activationSpread) : 0.0;
        }
        if (cfg_.scheme == Scheme::EtsiCluster) {
            etsi_.push_back(std::make_unique<EtsiStation>(static_cast<StationId>(i),
                                                          static_cast<std::uint32_t>(i), cfg_.etsi,
                                                          cfg_.trigger, this));
        } else if (cfg_.scheme == Scheme::ImplicitCluster) {
            implicit_.push_back(std::make_unique<ImplicitStation>(
                static_cast<StationId>(i), static_cast<std::uint32_t>(i), cfg_.implicit,
                cfg_.trigger,
                streamFor(runSeed_, static_cast<std::uint32_t>(i), RngPurpose::Holdoff), this));
        }
    }

    log_.vruCount = nVru_;
    log_.windowStart = cfg_.warmupSeconds;
    log_.windowEnd = endTime_;
    log_.generations.resize(nVru_);
    log_.awarenessEvents.resize(nVru_);
}

Engine::~Engine() = default;

VbsMode Engine::vruMode(int idx) const {
    switch (cfg_.scheme) {
        case Scheme::Standalone: return standaloneMode_[idx];
        case Scheme::EtsiCluster: return etsi_[idx]->mode();
        case Scheme::ImplicitCluster: return implicit_[idx]->mode();
    }
    return VbsMode::Idle;
}

const KinematicState& Engine::kinematics(int idx) const {
    return idx < nVru_ ? peds_.state(idx) : vehicles_.state(idx - nVru_);
}

void Engine::scriptGoIdle(int idx) {
    switch (cfg_.scheme) {
        case Scheme::Standalone:
            if (standaloneMode_[idx] != VbsMode::Idle) {
                recordTransition(idx, now_, standaloneMode_[idx], VbsMode::Idle,
                                 TransitionCause::Deactivate);
                standaloneMode_[idx] = VbsMode::Idle;
            }
            break;
        case Scheme::EtsiCluster: etsi_[idx]->deactivate(now_); break;
        case Scheme::ImplicitCluster: implicit_[idx]->deactivate(now_); break;
    }
    channel_->setEnabled(idx, false);  // radio off: neither sends nor receives
}

void Engine::scriptDropOffer(int idx) {
    if (cfg_.scheme == Scheme::ImplicitCluster) implicit_[idx]->dropOffer(now_);
}

void Engine::scriptBreakUp(int idx) {
    if (cfg_.scheme == Scheme::EtsiCluster) etsi_[idx]->breakUp(now_, kinematics(idx));
}

std::uint32_t Engine::allocateClusterId() { return ++clusterIdCounter_; }

void Engine::recordTransition(std::uint32_t idx, Seconds now, VbsMode from, VbsMode to,
                              TransitionCause cause) {
    transitions_.push_back({now, idx, from, to, cause});
}

void Engine::scheduleHoldoff(std::uint32_t idx, Seconds expiry, std::uint64_t generation) {
    queue_.push(expiry, {Event::Kind::Holdoff, idx, generation});
}

void Engine::emitVam(std::uint32_t idx, Seconds now, const KinematicState& kin,
                     std::optional<CoverageOffer> coverage,
                     std::optional<EtsiClusterContainer> container) {
    Vam vam;
    vam.sender = idx;
    vam.generationTime = now;
    vam.kinematics = kin;
    vam.coverage = std::move(coverage);
    vam.clusterContainer = std::move(container);
    vam.sizeBytes = vamSizeBytes(vam, cfg_.sizing);

    if (now >= log_.windowStart && now < log_.windowEnd)
        log_.generations[idx].push_back(now);
    TxRecord rec;
    rec.sender = idx;
    rec.time = now;
    rec.isVam = true;
    rec.hasCoverage = vam.coverage.has_value();
    if (vam.clusterContainer) rec.clusterOp = vam.clusterContainer->operation;
    rec.sizeBytes = vam.sizeBytes;
    log_.transmissions.push_back(rec);

    Frame frame;
    frame.senderIdx = idx;
    frame.kind = FrameKind::Vam;
    frame.sizeBytes = vam.sizeBytes;
    frame.vam = std::move(vam);
    scheduleChannelCmds(channel_->enqueue(idx, std::move(frame), now));
}

void Engine::scheduleChannelCmds(const std::vector<BroadcastChannel::ScheduleCmd>& cmds) {
    for (const auto& cmd : cmds)
        queue_.push(cmd.when, {Event::Kind::TxStart, cmd.station, cmd.generation});
}

void Engine::activateStation(int idx, Seconds t) {
    if (activated_[idx]) return;
    activated_[idx] = true;
    switch (cfg_.scheme) {
        case Scheme::Standalone: {
            recordTransition(idx, t, VbsMode::Idle, VbsMode::ActiveStandalone,
                             TransitionCause::Activate);
            standaloneMode_[idx] = VbsMode::ActiveStandalone;
            standaloneTrig_[idx] = resetTriggers(standaloneTrig_[idx], t, kinematics(idx));
            emitVam(idx, t, kinematics(idx), std::nullopt, std::nullopt);
            break;
        }
        case Scheme::EtsiCluster: etsi_[idx]->activate(t, kinematics(idx)); break;
        case Scheme::ImplicitCluster: implicit_[idx]->activate(t, kinematics(idx)); break;
    }
    const Seconds firstCheck = t + cfg_.trigger.checkInterval;
    if (firstCheck <= endTime_)
        queue_.push(firstCheck, {Event::Kind::Check, static_cast<std::uint32_t>(idx), 1});
}

void Engine::hashMobility() {
    auto mix = [&](double v) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        mobilityHash_ = (mobilityHash_ ^ bits) * 1099511628211ULL;
    };
    for (int i = 0; i < nVru_; ++i) {
        mix(peds_.state(i).position.x);
        mix(peds_.state(i).position.y);
    }
    for (int v = 0; v < nVeh_; ++v) {
        mix(vehicles_.state(v).position.x);
        mix(vehicles_.state(v).position.y);
    }
}

void Engine::handleTick(Seconds t, const Director& director) {
    const Seconds dt = t - lastTick_;
    if (dt > 0.0) {
        peds_.step(dt);
        vehicles_.step(dt);
        for (int i = 0; i < nVru_; ++i) channel_->setPosition(i, peds_.state(i).position);
        for (int v = 0; v < nVeh_; ++v)
            channel_->setPosition(nVru_ + v, vehicles_.state(v).position);
    }
    lastTick_ = t;
    hashMobility();

    if (director) director(*this, t);

    // Tick times come from k * interval, not accumulation, so the grid does
    // not drift over long runs.
    ++tickIndex_;
    const Seconds next = static_cast<double>(tickIndex_) * cfg_.trigger.checkInterval;
    if (next <= endTime_) queue_.push(next, {Event::Kind::Tick, 0, tickIndex_});
}

void Engine::handleCheck(const Event& e) {
    // Each station's periodic check runs on its own grid, anchored at its
    // activation instant: station clocks are not synchronized with each
    // other, so trigger fires (and thus transmissions) do not pile up on a
    // shared grid.
    const int i = static_cast<int>(e.station);
    switch (cfg_.scheme) {
        case Scheme::Standalone: {
            if (standaloneMode_[i] != VbsMode::ActiveStandalone) break;
            if (checkTriggers(standaloneTrig_[i], now_, kinematics(i), cfg_.trigger) ==
                TriggerDecision::Fire) {
                standaloneTrig_[i] = resetTriggers(standaloneTrig_[i], now_, kinematics(i));
                emitVam(i, now_, kinematics(i), std::nullopt, std::nullopt);
            }
            break;
        }
        case Scheme::EtsiCluster: etsi_[i]->tick(now_, kinematics(i)); break;
        case Scheme::ImplicitCluster: implicit_[i]->tick(now_, kinematics(i)); break;
    }
    const auto k = e.aux + 1;
    const Seconds next = activationAt_[i] + static_cast<double>(k) * cfg_.trigger.checkInterval;
    if (next <= endTime_) queue_.push(next, {Event::Kind::Check, e.station, k});
}

void Engine::handleTxStart(const Event& e) {
    const auto r = channel_->onTxStart(e.station, e.aux, now_);
    if (r.valid) queue_.push(r.endTime, {Event::Kind::TxEnd, e.station, r.frameId});
}

void Engine::handleTxEnd(const Event& e) {
    auto res = channel_->onTxEnd(e.aux, now_);
    scheduleChannelCmds(res.resume);
    if (res.frame.kind != FrameKind::Vam || !res.frame.vam) return;
    const Vam& vam = *res.frame.vam;

    bool anyOk = false;
    for (const auto& rx : res.receptions) {
        if (rx.outcome != RxOutcome::Ok) continue;
        anyOk = true;
        if (now_ >= log_.windowStart && now_ < log_.windowEnd) {
            log_.receptions[{rx.receiverIdx, vam.sender}].push_back({now_, rx.distanceM});
        }
        if (rx.receiverIdx < static_cast<std::uint32_t>(nVru_) && activated_[rx.receiverIdx]) {
            const auto& egoKin = kinematics(static_cast<int>(rx.receiverIdx));
            if (cfg_.scheme == Scheme::EtsiCluster)
                etsi_[rx.receiverIdx]->onVamReceived(now_, egoKin, vam);
            else if (cfg_.scheme == Scheme::ImplicitCluster)
                implicit_[rx.receiverIdx]->onVamReceived(now_, egoKin, vam);
        }
    }

    const Seconds awarenessFrom = log_.windowStart - cfg_.awarenessWindow;
    if (anyOk && now_ >= awarenessFrom && now_ < log_.windowEnd) {
        log_.awarenessEvents[vam.sender].push_back(now_);
        if (vam.coverage) {
            // Vicarious visibility: the received circle represents every VRU
            // inside it, transmitting or not.
            for (int s = 0; s < nVru_; ++s) {
                if (s == static_cast<int>(vam.sender)) continue;
                if (withinCoverage(peds_.state(s).position, *vam.coverage))
                    log_.awarenessEvents[s].push_back(now_);
            }
        }
    }
}

void Engine::handleCamGen(const Event& e) {
    const int v = static_cast<int>(e.station) - nVru_;
    Frame frame;
    frame.senderIdx = e.station;
    frame.kind = FrameKind::Cam;
    frame.sizeBytes = cfg_.sizing.baseBytes;
    scheduleChannelCmds(channel_->enqueue(e.station, std::move(frame), now_));
    const Seconds next = now_ + 1.0 / vehicles_.spec(v).camRateHz;
    if (next <= endTime_) queue_.push(next, {Event::Kind::CamGen, e.station, 0});
}

RunResult Engine::run(const Director& director) {
    queue_.push(0.0, {Event::Kind::Tick, 0, 0});
    for (int i = 0; i < nVru_; ++i)
        queue_.push(activationAt_[i], {Event::Kind::Activate, static_cast<std::uint32_t>(i), 0});
    for (int v = 0; v < nVeh_; ++v) {
        Rng rng = streamFor(runSeed_, static_cast<std::uint32_t>(nVru_ + v), RngPurpose::CamPhase);
        queue_.push(rng.uniform(0.0, 1.0 / vehicles_.spec(v).camRateHz),
                    {Event::Kind::CamGen, static_cast<std::uint32_t>(nVru_ + v), 0});
    }

    while (auto e = queue_.pop()) {
        if (e->time > endTime_) break;
        now_ = e->time;
        switch (e->payload.kind) {
            case Event::Kind::Tick: handleTick(now_, director); break;
            case Event::Kind::Activate:
                activateStation(static_cast<int>(e->payload.station), now_);
                break;
            case Event::Kind::Check: handleCheck(e->payload); break;
            case Event::Kind::TxStart: handleTxStart(e->payload); break;
            case Event::Kind::TxEnd: handleTxEnd(e->payload); break;
            case Event::Kind::Holdoff:
                if (cfg_.scheme == Scheme::ImplicitCluster && activated_[e->payload.station])
                    implicit_[e->payload.station]->onHoldoffTimer(
                        now_, e->payload.aux, kinematics(static_cast<int>(e->payload.station)));
                break;
            case Event::Kind::CamGen: handleCamGen(e->payload); break;
        }
    }

    RunResult result;
    result.log = std::move(log_);
    result.channelStats = channel_->stats();
    result.mobilityHash = mobilityHash_;
    result.transitions = std::move(transitions_);
    result.finalModes.reserve(nVru_);
    for (int i = 0; i < nVru_; ++i) result.finalModes.push_back(vruMode(i));
    return result;
}

RunResult runRepetition(const ScenarioConfig& cfg, int repetition, const Director& director) {
    Engine engine(cfg, repetition);
    return engine.run(director);
}

std::vector<RunResult> runScenario(const ScenarioConfig& cfg, const Director& director) {
    cfg.validate();
    std::vector<RunResult> results;
    results.reserve(cfg.repetitions);
    for (int r = 0; r < cfg.repetitions; ++r) results.push_back(runRepetition(cfg, r, director));
    return results;
}

}  // namespace vamsim
