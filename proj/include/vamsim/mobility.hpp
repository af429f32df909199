#pragma once

#include <vector>

#include "vamsim/core.hpp"
#include "vamsim/rng.hpp"

namespace vamsim {

enum class Sidewalk : std::uint8_t { North, South };

struct PedestrianSpec {
    double targetSpeedMps = 1.389;  // 5 km/h
    Sidewalk sidewalk = Sidewalk::North;
    int direction = +1;             // +1 -> +x, -1 -> -x
    double startOffsetM = 0.0;
    double lateralJitterM = 0.0;
};

struct VehicleSpec {
    double speedMps = 16.667;  // 60 km/h
    int lane = 0;
    double camRateHz = 10.0;
    double startOffsetM = 0.0;
    int direction = +1;
};

struct MobilityConfig {
    double sidewalkOffsetM = 6.0;      // sidewalk lines at y = +-6 m
    double lateralJitterMaxM = 1.5;
    double maxPedestrianSpeedMps = 1.389;
    double speedFactorMin = 0.85;      // per-ped speed = U[min,1] * max
    double maxVehicleSpeedMps = 16.667;
    double laneWidthM = 3.5;

    // Overtaking perturbation: a transient heading deviation when closing on
    // a slower pedestrian, enough to trip the heading trigger.
    double overtakeTriggerDistanceM = 1.2;
    double overtakeSpeedGapMps = 0.05;
    double overtakeHeadingDeg = 6.0;
    Seconds overtakeDeviateSeconds = 1.0;
    double overtakeClearAheadM = 1.0;
    Seconds overtakeMaxPassSeconds = 6.0;
    Seconds overtakeCooldownSeconds = 2.0;
};

/// count = round(segmentLength/100 * density), split across two sidewalks and
/// two directions; spacing along each sidewalk is the mean separation plus
/// seeded jitter.
std::vector<PedestrianSpec> placePedestrians(double segmentLengthM, double densityPer100m,
                                             Rng& rng, const MobilityConfig& cfg);

std::vector<VehicleSpec> placeVehicles(double segmentLengthM, double densityPerKmPerLane,
                                       int lanes, double camRateHz, Rng& rng,
                                       const MobilityConfig& cfg);

/// Constant-velocity advance along the current heading. dt must be > 0.
KinematicState stepKinematics(const KinematicState& state, Seconds dt);

/// Owns all pedestrian trajectories, including the overtaking state machine.
/// Trajectories depend only on the placement (seed), never on protocol state,
/// so traces are bit-identical across schemes.
class PedestrianField {
public:
    PedestrianField(std::vector<PedestrianSpec> specs, double segmentLengthM,
                    const MobilityConfig& cfg);

    void step(Seconds dt);

    std::size_t size() const { return specs_.size(); }
    const KinematicState& state(std::size_t i) const { return states_[i]; }
    const PedestrianSpec& spec(std::size_t i) const { return specs_[i]; }
    bool overtaking(std::size_t i) const { return phases_[i].phase != Phase::Cruise; }
    /// Nonzero when the segment wrap relocated this pedestrian in the last
    /// step: the x offset that was applied. The station's own odometry is
    /// continuous across the wrap; protocol state must be told.
    double wrapOffset(std::size_t i) const { return wrapOffsets_[i]; }

private:
    enum class Phase : std::uint8_t { Cruise, Out, Pass, Back, Cooldown };
    struct OvertakePhase {
        Phase phase = Phase::Cruise;
        Seconds elapsed = 0.0;
        int targetIdx = -1;
    };

    double baseHeading(const PedestrianSpec& s) const { return s.direction > 0 ? 0.0 : 180.0; }
    double sidewalkY(const PedestrianSpec& s) const;
    int nearestSlowerAhead(std::size_t i) const;

    std::vector<PedestrianSpec> specs_;
    std::vector<KinematicState> states_;
    std::vector<OvertakePhase> phases_;
    std::vector<double> wrapOffsets_;
    double segmentLengthM_;
    MobilityConfig cfg_;
};

class VehicleField {
public:
    VehicleField(std::vector<VehicleSpec> specs, double segmentLengthM,
                 const MobilityConfig& cfg);

    void step(Seconds dt);

    std::size_t size() const { return specs_.size(); }
    const KinematicState& state(std::size_t i) const { return states_[i]; }
    const VehicleSpec& spec(std::size_t i) const { return specs_[i]; }

private:
    std::vector<VehicleSpec> specs_;
    std::vector<KinematicState> states_;
    double segmentLengthM_;
};

}  // namespace vamsim
