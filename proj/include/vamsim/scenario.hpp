#pragma once

#include <string>

#include "vamsim/channel.hpp"
#include "vamsim/core.hpp"
#include "vamsim/etsi.hpp"
#include "vamsim/implicit.hpp"
#include "vamsim/metrics.hpp"
#include "vamsim/mobility.hpp"
#include "vamsim/trigger.hpp"

namespace vamsim {

/// Full experiment description. Parsed from a flat key-value text file
/// ("key = value", '#' comments); nested blocks use dotted keys
/// (trigger.deltaPosition, etsi.maxMembers, phy.dataRateBps, ...).
struct ScenarioConfig {
    Scheme scheme = Scheme::Standalone;
    double segmentLength = 2000.0;    // m
    double pedestrianDensity = 48.0;  // per 100 m
    double vehicleDensity = 30.0;     // per km per lane, 0 disables vehicles
    int lanes = 2;
    double camRateHz = 10.0;
    Seconds warmupSeconds = 100.0;
    Seconds measureSeconds = 60.0;
    int repetitions = 5;
    std::uint64_t seed = 1;
    Seconds activationSpread = 3.0;  // stations power on within [0, spread)
    bool lossless = false;
    Seconds awarenessWindow = 3.0;

    TriggerConfig trigger;
    ImplicitConfig implicit;
    EtsiClusterConfig etsi;
    PhyConfig phy;
    MacConfig mac;
    MobilityConfig mobility;
    VamSizing sizing;

    /// Programmatic scenarios (tests, canned comparisons) may pin exact
    /// placements and activation instants; file configs always use the
    /// seeded generators.
    std::vector<PedestrianSpec> pinnedPedestrians;
    std::vector<Seconds> pinnedActivations;

    void validate() const;
};

/// Parse a config file. Unknown keys and malformed values are errors naming
/// the offending key.
ScenarioConfig loadScenarioConfig(const std::string& path);
ScenarioConfig parseScenarioText(const std::string& text);

/// Apply one "key=value" override (CLI flags reuse the file keys).
void applyConfigKey(ScenarioConfig& cfg, const std::string& key, const std::string& value);

}  // namespace vamsim
