#include "vamsim/scenarios.hpp"

namespace vamsim {

namespace {

std::vector<PedestrianSpec> walkingGroup() {
    // 0.8 m spacing, 4 m total span: everyone inside everyone's 5 m circle.
    // 1.35 m/s puts the 4 m position trigger at 2.963 s, i.e. on every third
    // 0.1 s check, so the generation cadence is exactly 3.0 s.
    std::vector<PedestrianSpec> specs;
    for (int i = 0; i < 6; ++i) {
        PedestrianSpec s;
        s.targetSpeedMps = 1.35;
        s.sidewalk = Sidewalk::North;
        s.direction = +1;
        s.startOffsetM = 10.0 + 0.8 * static_cast<double>(i);
        s.lateralJitterM = 0.0;
        specs.push_back(s);
    }
    return specs;
}

ScenarioConfig groupBase(Scheme scheme) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.segmentLength = 200.0;
    cfg.pedestrianDensity = 3.0;  // unused, placement pinned
    cfg.vehicleDensity = 0.0;
    cfg.lanes = 0;
    cfg.warmupSeconds = 0.0;
    cfg.repetitions = 1;
    cfg.seed = 1;
    cfg.lossless = true;
    cfg.pinnedPedestrians = walkingGroup();
    cfg.pinnedActivations = {0.0, 0.13, 0.26, 0.39, 0.52, 0.65};
    return cfg;
}

}  // namespace

ScenarioConfig accountingScenario(Scheme scheme) {
    ScenarioConfig cfg = groupBase(scheme);
    cfg.measureSeconds = 36.0;
    return cfg;
}

ScenarioConfig clusterOfSixScenario(Scheme scheme, Seconds measureSeconds) {
    ScenarioConfig cfg = groupBase(scheme);
    cfg.segmentLength = 400.0;  // room to keep walking for longer experiments
    cfg.measureSeconds = measureSeconds;
    return cfg;
}

int countVamsBetween(const RunResult& run, Seconds from, Seconds to) {
    int n = 0;
    for (const auto& tx : run.log.transmissions)
        if (tx.isVam && tx.time >= from && tx.time < to) ++n;
    return n;
}

int countClusterOpMessages(const RunResult& run) {
    int n = 0;
    for (const auto& tx : run.log.transmissions)
        if (tx.clusterOp) ++n;
    return n;
}

int countTransmissionsBetween(const RunResult& run, StationId sender, Seconds from, Seconds to) {
    int n = 0;
    for (const auto& tx : run.log.transmissions)
        if (tx.sender == sender && tx.time >= from && tx.time < to) ++n;
    return n;
}

AccountingResult runMessageAccounting(Scheme scheme) {
    const ScenarioConfig cfg = accountingScenario(scheme);
    AccountingResult result;

    if (scheme == Scheme::EtsiCluster) {
        // Keep the cluster alive for 30 s after the lead offer, then break up.
        bool done = false;
        auto director = [&](Engine& e, Seconds t) {
            if (done) return;
            for (int i = 0; i < e.vruCount(); ++i) {
                if (e.vruMode(i) == VbsMode::ActiveClusterLeader &&
                    t >= e.etsiStation(i).leadSince() + 30.0) {
                    e.scriptBreakUp(i);
                    done = true;
                }
            }
        };
        result.run = runRepetition(cfg, 0, director);
        result.messageCount = countClusterOpMessages(result.run);
        return result;
    }

    result.run = runRepetition(cfg, 0);
    // Steady-state window: the implicit cluster has converged well before
    // t = 5 s, and the 3 s cadence divides the 30 s window evenly.
    result.messageCount = countVamsBetween(result.run, 5.0, 35.0);
    return result;
}

ScenarioConfig singlePedestrianScenario() {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::Standalone;
    cfg.segmentLength = 200.0;
    cfg.pedestrianDensity = 1.0;
    cfg.vehicleDensity = 0.0;
    cfg.lanes = 0;
    cfg.warmupSeconds = 5.0;
    cfg.measureSeconds = 60.0;
    cfg.repetitions = 1;
    cfg.seed = 1;
    cfg.lossless = true;
    PedestrianSpec s;
    s.targetSpeedMps = 1.389;  // exactly 5 km/h
    s.sidewalk = Sidewalk::North;
    s.direction = +1;
    s.startOffsetM = 5.0;
    cfg.pinnedPedestrians = {s};
    cfg.pinnedActivations = {0.0};
    return cfg;
}

ScenarioConfig deskScenario(Scheme scheme, std::uint64_t seed, bool withVehicles) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.segmentLength = 200.0;
    cfg.pedestrianDensity = 48.0;
    cfg.vehicleDensity = withVehicles ? 30.0 : 0.0;
    cfg.lanes = withVehicles ? 2 : 0;
    cfg.warmupSeconds = 100.0;
    cfg.measureSeconds = 60.0;
    cfg.repetitions = 5;
    cfg.seed = seed;
    return cfg;
}

}  // namespace vamsim
