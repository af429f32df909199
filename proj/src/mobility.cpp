#include "vamsim/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace vamsim {

std::vector<PedestrianSpec> placePedestrians(double segmentLengthM, double densityPer100m,
                                             Rng& rng, const MobilityConfig& cfg) {
    if (segmentLengthM <= 0.0) return {};
    if (densityPer100m <= 0.0) throw std::invalid_argument("pedestrian density must be > 0");

    const auto count = static_cast<std::size_t>(std::llround(segmentLengthM / 100.0 * densityPer100m));
    std::vector<PedestrianSpec> specs;
    specs.reserve(count);

    // Interleave the two sidewalks so each gets half the population.
    const std::size_t perWalk[2] = {(count + 1) / 2, count / 2};
    for (int w = 0; w < 2; ++w) {
        const std::size_t n = perWalk[w];
        if (n == 0) continue;
        const double spacing = segmentLengthM / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            PedestrianSpec s;
            s.sidewalk = w == 0 ? Sidewalk::North : Sidewalk::South;
            s.startOffsetM = (static_cast<double>(i) + rng.uniform01()) * spacing;
            s.lateralJitterM = rng.uniform(-cfg.lateralJitterMaxM, cfg.lateralJitterMaxM);
            s.direction = rng.uniform01() < 0.5 ? +1 : -1;
            s.targetSpeedMps = cfg.maxPedestrianSpeedMps * rng.uniform(cfg.speedFactorMin, 1.0);
            specs.push_back(s);
        }
    }
    return specs;
}

std::vector<VehicleSpec> placeVehicles(double segmentLengthM, double densityPerKmPerLane,
                                       int lanes, double camRateHz, Rng& rng,
                                       const MobilityConfig& cfg) {
    std::vector<VehicleSpec> specs;
    if (segmentLengthM <= 0.0 || densityPerKmPerLane <= 0.0 || lanes <= 0) return specs;
    if (camRateHz < 1.0 || camRateHz > 10.0)
        throw std::invalid_argument("camRateHz must be within [1, 10]");

    const auto perLane =
        static_cast<std::size_t>(std::llround(segmentLengthM / 1000.0 * densityPerKmPerLane));
    for (int lane = 0; lane < lanes; ++lane) {
        if (perLane == 0) continue;
        const double spacing = segmentLengthM / static_cast<double>(perLane);
        for (std::size_t i = 0; i < perLane; ++i) {
            VehicleSpec v;
            v.lane = lane;
            v.direction = lane % 2 == 0 ? +1 : -1;
            v.speedMps = cfg.maxVehicleSpeedMps;
            v.camRateHz = camRateHz;
            v.startOffsetM = (static_cast<double>(i) + rng.uniform01()) * spacing;
            specs.push_back(v);
        }
    }
    return specs;
}

KinematicState stepKinematics(const KinematicState& state, Seconds dt) {
    if (dt <= 0.0) throw std::invalid_argument("stepKinematics: dt must be > 0");
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    KinematicState next = state;
    next.position.x += state.speedMps * dt * std::cos(state.headingDeg * kDegToRad);
    next.position.y += state.speedMps * dt * std::sin(state.headingDeg * kDegToRad);
    return next;
}

PedestrianField::PedestrianField(std::vector<PedestrianSpec> specs, double segmentLengthM,
                                 const MobilityConfig& cfg)
    : specs_(std::move(specs)), segmentLengthM_(segmentLengthM), cfg_(cfg) {
    states_.reserve(specs_.size());
    phases_.resize(specs_.size());
    wrapOffsets_.resize(specs_.size(), 0.0);
    for (const auto& s : specs_) {
        KinematicState k;
        k.position = {s.startOffsetM, sidewalkY(s) + s.lateralJitterM};
        k.speedMps = s.targetSpeedMps;
        k.headingDeg = baseHeading(s);
        states_.push_back(k);
    }
}

double PedestrianField::sidewalkY(const PedestrianSpec& s) const {
    return s.sidewalk == Sidewalk::North ? cfg_.sidewalkOffsetM : -cfg_.sidewalkOffsetM;
}

int PedestrianField::nearestSlowerAhead(std::size_t i) const {
    const auto& me = specs_[i];
    const auto& myState = states_[i];
    int best = -1;
    double bestGap = cfg_.overtakeTriggerDistanceM;
    for (std::size_t j = 0; j < specs_.size(); ++j) {
        if (j == i) continue;
        const auto& other = specs_[j];
        if (other.sidewalk != me.sidewalk || other.direction != me.direction) continue;
        if (other.targetSpeedMps > me.targetSpeedMps - cfg_.overtakeSpeedGapMps) continue;
        const double gap = (states_[j].position.x - myState.position.x) * me.direction;
        if (gap <= 0.0 || gap > bestGap) continue;
        bestGap = gap;
        best = static_cast<int>(j);
    }
    return best;
}

void PedestrianField::step(Seconds dt) {
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        auto& phase = phases_[i];
        const auto& spec = specs_[i];
        auto& state = states_[i];

        phase.elapsed += dt;
        switch (phase.phase) {
            case Phase::Cruise: {
                const int target = nearestSlowerAhead(i);
                if (target >= 0) {
                    phase = {Phase::Out, 0.0, target};
                    state.headingDeg = normalizeHeading(baseHeading(spec) + cfg_.overtakeHeadingDeg);
                }
                break;
            }
            case Phase::Out:
                if (phase.elapsed >= cfg_.overtakeDeviateSeconds) {
                    phase.phase = Phase::Pass;
                    phase.elapsed = 0.0;
                    state.headingDeg = baseHeading(spec);
                }
                break;
            case Phase::Pass: {
                const bool timeout = phase.elapsed >= cfg_.overtakeMaxPassSeconds;
                bool cleared = true;
                if (phase.targetIdx >= 0) {
                    const double ahead =
                        (state.position.x - states_[phase.targetIdx].position.x) * spec.direction;
                    cleared = ahead >= cfg_.overtakeClearAheadM;
                }
                if (cleared || timeout) {
                    phase.phase = Phase::Back;
                    phase.elapsed = 0.0;
                    state.headingDeg = normalizeHeading(baseHeading(spec) - cfg_.overtakeHeadingDeg);
                }
                break;
            }
            case Phase::Back:
                if (phase.elapsed >= cfg_.overtakeDeviateSeconds) {
                    phase.phase = Phase::Cooldown;
                    phase.elapsed = 0.0;
                    state.headingDeg = baseHeading(spec);
                }
                break;
            case Phase::Cooldown:
                if (phase.elapsed >= cfg_.overtakeCooldownSeconds) phase = {Phase::Cruise, 0.0, -1};
                break;
        }

        state = stepKinematics(state, dt);

        // Stay on the sidewalk: clamp the lateral coordinate.
        const double yCenter = sidewalkY(spec);
        const double yMax = cfg_.lateralJitterMaxM + 0.5;
        state.position.y = std::clamp(state.position.y, yCenter - yMax, yCenter + yMax);

        // Wrap around the segment to keep density stationary.
        wrapOffsets_[i] = 0.0;
        if (state.position.x < 0.0) {
            state.position.x += segmentLengthM_;
            wrapOffsets_[i] = segmentLengthM_;
        } else if (state.position.x >= segmentLengthM_) {
            state.position.x -= segmentLengthM_;
            wrapOffsets_[i] = -segmentLengthM_;
        }
    }
}

VehicleField::VehicleField(std::vector<VehicleSpec> specs, double segmentLengthM,
                           const MobilityConfig& cfg)
    : specs_(std::move(specs)), segmentLengthM_(segmentLengthM) {
    states_.reserve(specs_.size());
    for (const auto& v : specs_) {
        KinematicState k;
        const double laneCenter = (0.5 + static_cast<double>(v.lane / 2)) * cfg.laneWidthM;
        k.position = {v.startOffsetM, v.lane % 2 == 0 ? -laneCenter : laneCenter};
        k.speedMps = v.speedMps;
        k.headingDeg = v.direction > 0 ? 0.0 : 180.0;
        states_.push_back(k);
    }
}

void VehicleField::step(Seconds dt) {
    for (auto& state : states_) {
        state = stepKinematics(state, dt);
        if (state.position.x < 0.0) state.position.x += segmentLengthM_;
        if (state.position.x >= segmentLengthM_) state.position.x -= segmentLengthM_;
    }
}

}  // namespace vamsim
