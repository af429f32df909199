#pragma once

#include "vamsim/scenario.hpp"
#include "vamsim/simulation.hpp"

namespace vamsim {

/// Six pedestrians walking together within one cluster radius on a lossless
/// channel, speeds pinned so the position trigger lands on every third check
/// tick, activations staggered so clustering resolves deterministically.
/// The lifecycle comparison counts:
///   standalone      - every VAM in a 30 s steady-state window (60)
///   implicitCluster - every VAM in the same window (10: only the leader)
///   etsiCluster     - every cluster-container message across the whole
///                     form / maintain 30 s / break-up lifecycle
ScenarioConfig accountingScenario(Scheme scheme);

struct AccountingResult {
    int messageCount = 0;
    RunResult run;
};

AccountingResult runMessageAccounting(Scheme scheme);

/// One pedestrian at exactly 5 km/h on an empty channel.
ScenarioConfig singlePedestrianScenario();

/// 200 m segment at the default density (96 pedestrians); optional vehicle
/// background traffic. Five repetitions by default.
ScenarioConfig deskScenario(Scheme scheme, std::uint64_t seed, bool withVehicles);

/// The accounting geometry reused as a free-running stable cluster for
/// leader-loss and disband experiments (no scripted break-up).
ScenarioConfig clusterOfSixScenario(Scheme scheme, Seconds measureSeconds);

int countVamsBetween(const RunResult& run, Seconds from, Seconds to);
int countClusterOpMessages(const RunResult& run);
int countTransmissionsBetween(const RunResult& run, StationId sender, Seconds from, Seconds to);

}  // namespace vamsim
