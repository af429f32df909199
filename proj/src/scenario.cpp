#include "vamsim/scenario.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vamsim {

void ScenarioConfig::validate() const {
    if (measureSeconds <= 0.0) throw std::invalid_argument("measureSeconds must be > 0");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (segmentLength <= 0.0) throw std::invalid_argument("segmentLength must be > 0");
    if (pedestrianDensity <= 0.0 && pinnedPedestrians.empty())
        throw std::invalid_argument("pedestrianDensity must be > 0");
    if (!pinnedActivations.empty() && pinnedActivations.size() != pinnedPedestrians.size())
        throw std::invalid_argument("pinnedActivations must match pinnedPedestrians");
    if (vehicleDensity < 0.0) throw std::invalid_argument("vehicleDensity must be >= 0");
    if (lanes < 0) throw std::invalid_argument("lanes must be >= 0");
    if (warmupSeconds < 0.0) throw std::invalid_argument("warmupSeconds must be >= 0");
    if (activationSpread < 0.0) throw std::invalid_argument("activationSpread must be >= 0");
    trigger.validate();
    implicit.validate();
    etsi.validate();
    phy.validate();
    mac.validate();
}

namespace {

double parseDouble(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config key '" + key + "': trailing junk in '" + value + "'");
    return v;
}

std::uint64_t parseUint(const std::string& key, const std::string& value) {
    const double v = parseDouble(key, value);
    if (v < 0.0 || v != std::floor(v))
        throw std::invalid_argument("config key '" + key + "': expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

bool parseBool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config key '" + key + "': expected true/false");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void applyConfigKey(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    using Setter = std::function<void(ScenarioConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"scheme",
         [](ScenarioConfig& c, const std::string& v) {
             auto s = schemeFromString(v);
             if (!s)
                 throw std::invalid_argument(
                     "config key 'scheme': expected standalone|etsiCluster|implicitCluster, got '" +
                     v + "'");
             c.scheme = *s;
         }},
        {"segmentLength", [](auto& c, const auto& v) { c.segmentLength = parseDouble("segmentLength", v); }},
        {"pedestrianDensity", [](auto& c, const auto& v) { c.pedestrianDensity = parseDouble("pedestrianDensity", v); }},
        {"vehicleDensity", [](auto& c, const auto& v) { c.vehicleDensity = parseDouble("vehicleDensity", v); }},
        {"lanes", [](auto& c, const auto& v) { c.lanes = static_cast<int>(parseUint("lanes", v)); }},
        {"camRateHz", [](auto& c, const auto& v) { c.camRateHz = parseDouble("camRateHz", v); }},
        {"warmupSeconds", [](auto& c, const auto& v) { c.warmupSeconds = parseDouble("warmupSeconds", v); }},
        {"measureSeconds", [](auto& c, const auto& v) { c.measureSeconds = parseDouble("measureSeconds", v); }},
        {"repetitions", [](auto& c, const auto& v) { c.repetitions = static_cast<int>(parseUint("repetitions", v)); }},
        {"seed", [](auto& c, const auto& v) { c.seed = parseUint("seed", v); }},
        {"activationSpread", [](auto& c, const auto& v) { c.activationSpread = parseDouble("activationSpread", v); }},
        {"lossless", [](auto& c, const auto& v) { c.lossless = parseBool("lossless", v); }},
        {"awarenessWindow", [](auto& c, const auto& v) { c.awarenessWindow = parseDouble("awarenessWindow", v); }},
        {"trigger.checkInterval", [](auto& c, const auto& v) { c.trigger.checkInterval = parseDouble("trigger.checkInterval", v); }},
        {"trigger.deltaPosition", [](auto& c, const auto& v) { c.trigger.deltaPosition = parseDouble("trigger.deltaPosition", v); }},
        {"trigger.deltaSpeed", [](auto& c, const auto& v) { c.trigger.deltaSpeed = parseDouble("trigger.deltaSpeed", v); }},
        {"trigger.deltaHeading", [](auto& c, const auto& v) { c.trigger.deltaHeading = parseDouble("trigger.deltaHeading", v); }},
        {"trigger.tGenVamMin", [](auto& c, const auto& v) { c.trigger.tGenVamMin = parseDouble("trigger.tGenVamMin", v); }},
        {"trigger.tGenVamMax", [](auto& c, const auto& v) { c.trigger.tGenVamMax = parseDouble("trigger.tGenVamMax", v); }},
        {"implicit.clusterRadius", [](auto& c, const auto& v) { c.implicit.clusterRadius = parseDouble("implicit.clusterRadius", v); }},
        {"implicit.holdoffMin", [](auto& c, const auto& v) { c.implicit.holdoffMin = parseDouble("implicit.holdoffMin", v); }},
        {"implicit.holdoffMax", [](auto& c, const auto& v) { c.implicit.holdoffMax = parseDouble("implicit.holdoffMax", v); }},
        {"implicit.neighborWindow", [](auto& c, const auto& v) { c.implicit.neighborWindow = parseDouble("implicit.neighborWindow", v); }},
        {"etsi.maxMembers", [](auto& c, const auto& v) { c.etsi.maxMembers = static_cast<std::uint32_t>(parseUint("etsi.maxMembers", v)); }},
        {"etsi.minNeighborsToForm", [](auto& c, const auto& v) { c.etsi.minNeighborsToForm = static_cast<std::uint32_t>(parseUint("etsi.minNeighborsToForm", v)); }},
        {"etsi.joinDistance", [](auto& c, const auto& v) { c.etsi.joinDistance = parseDouble("etsi.joinDistance", v); }},
        {"etsi.speedHomogeneity", [](auto& c, const auto& v) { c.etsi.speedHomogeneity = parseDouble("etsi.speedHomogeneity", v); }},
        {"etsi.timeClusterContinuity", [](auto& c, const auto& v) { c.etsi.timeClusterContinuity = parseDouble("etsi.timeClusterContinuity", v); }},
        {"etsi.timeClusterJoinNotification", [](auto& c, const auto& v) { c.etsi.timeClusterJoinNotification = parseDouble("etsi.timeClusterJoinNotification", v); }},
        {"etsi.timeClusterJoinSuccess", [](auto& c, const auto& v) { c.etsi.timeClusterJoinSuccess = parseDouble("etsi.timeClusterJoinSuccess", v); }},
        {"phy.frequencyHz", [](auto& c, const auto& v) { c.phy.frequencyHz = parseDouble("phy.frequencyHz", v); }},
        {"phy.bandwidthHz", [](auto& c, const auto& v) { c.phy.bandwidthHz = parseDouble("phy.bandwidthHz", v); }},
        {"phy.dataRateBps", [](auto& c, const auto& v) { c.phy.dataRateBps = parseDouble("phy.dataRateBps", v); }},
        {"phy.txPowerPedestrianW", [](auto& c, const auto& v) { c.phy.txPowerPedestrianW = parseDouble("phy.txPowerPedestrianW", v); }},
        {"phy.txPowerVehicleW", [](auto& c, const auto& v) { c.phy.txPowerVehicleW = parseDouble("phy.txPowerVehicleW", v); }},
        {"phy.antennaHeightPedestrianM", [](auto& c, const auto& v) { c.phy.antennaHeightPedestrianM = parseDouble("phy.antennaHeightPedestrianM", v); }},
        {"phy.antennaHeightVehicleM", [](auto& c, const auto& v) { c.phy.antennaHeightVehicleM = parseDouble("phy.antennaHeightVehicleM", v); }},
        {"phy.receptionThresholdDbm", [](auto& c, const auto& v) { c.phy.receptionThresholdDbm = parseDouble("phy.receptionThresholdDbm", v); }},
        {"phy.carrierSenseThresholdDbm", [](auto& c, const auto& v) { c.phy.carrierSenseThresholdDbm = parseDouble("phy.carrierSenseThresholdDbm", v); }},
        {"phy.captureMarginDb", [](auto& c, const auto& v) { c.phy.captureMarginDb = parseDouble("phy.captureMarginDb", v); }},
        {"phy.groundPermittivity", [](auto& c, const auto& v) { c.phy.groundPermittivity = parseDouble("phy.groundPermittivity", v); }},
        {"mac.slotTime", [](auto& c, const auto& v) { c.mac.slotTime = parseDouble("mac.slotTime", v); }},
        {"mac.aifs", [](auto& c, const auto& v) { c.mac.aifs = parseDouble("mac.aifs", v); }},
        {"mac.contentionWindow", [](auto& c, const auto& v) { c.mac.contentionWindow = static_cast<std::uint32_t>(parseUint("mac.contentionWindow", v)); }},
        {"sizing.baseBytes", [](auto& c, const auto& v) { c.sizing.baseBytes = static_cast<std::uint32_t>(parseUint("sizing.baseBytes", v)); }},
        {"sizing.clusterBytes", [](auto& c, const auto& v) { c.sizing.clusterBytes = static_cast<std::uint32_t>(parseUint("sizing.clusterBytes", v)); }},
        {"mobility.speedFactorMin", [](auto& c, const auto& v) { c.mobility.speedFactorMin = parseDouble("mobility.speedFactorMin", v); }},
        {"mobility.sidewalkOffsetM", [](auto& c, const auto& v) { c.mobility.sidewalkOffsetM = parseDouble("mobility.sidewalkOffsetM", v); }},
        {"mobility.lateralJitterMaxM", [](auto& c, const auto& v) { c.mobility.lateralJitterMaxM = parseDouble("mobility.lateralJitterMaxM", v); }},
    };

    auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    it->second(cfg, value);
}

ScenarioConfig parseScenarioText(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineNo) +
                                        ": expected 'key = value'");
        applyConfigKey(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig loadScenarioConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseScenarioText(buf.str());
}

}  // namespace vamsim
