#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vamsim/event_queue.hpp"
#include "vamsim/scenario.hpp"
#include "vamsim/station.hpp"

namespace vamsim {

struct RunResult {
    MetricLog log;
    ChannelStats channelStats;
    std::uint64_t mobilityHash = 0;
    std::vector<TransitionRecord> transitions;
    std::vector<VbsMode> finalModes;  // per VRU

    bool hasTransition(TransitionCause cause) const;
};

class Engine;

/// Invoked at the start of every tick; scripted scenarios steer the run
/// (suppress a leader, drop an offer, break a cluster up) through the
/// engine's script* methods. Must be deterministic.
using Director = std::function<void(Engine&, Seconds)>;

/// One repetition: deterministic event loop over mobility ticks, trigger
/// checks, MAC timing and frame delivery. The full event trace is a pure
/// function of (ScenarioConfig, repetition).
class Engine final : public EngineHooks {
public:
    Engine(const ScenarioConfig& cfg, int repetition);
    ~Engine() override;

    RunResult run(const Director& director = {});

    // ---- observation / scripting surface (used by directors and tests) ----
    Seconds now() const { return now_; }
    int vruCount() const { return nVru_; }
    int stationCount() const { return nVru_ + nVeh_; }
    VbsMode vruMode(int idx) const;
    const KinematicState& kinematics(int idx) const;
    const EtsiStation& etsiStation(int idx) const { return *etsi_[idx]; }
    const ImplicitStation& implicitStation(int idx) const { return *implicit_[idx]; }
    bool activated(int idx) const { return activated_[idx]; }

    void scriptGoIdle(int idx);
    void scriptDropOffer(int idx);
    void scriptBreakUp(int idx);

    // ---- EngineHooks ----
    void emitVam(std::uint32_t idx, Seconds now, const KinematicState& kin,
                 std::optional<CoverageOffer> coverage,
                 std::optional<EtsiClusterContainer> container) override;
    void scheduleHoldoff(std::uint32_t idx, Seconds expiry, std::uint64_t generation) override;
    void recordTransition(std::uint32_t idx, Seconds now, VbsMode from, VbsMode to,
                          TransitionCause cause) override;
    std::uint32_t allocateClusterId() override;

private:
    struct Event {
        enum class Kind : std::uint8_t { Tick, Activate, Check, TxStart, TxEnd, Holdoff, CamGen } kind;
        std::uint32_t station = 0;
        std::uint64_t aux = 0;  // TxStart/Holdoff: generation; TxEnd: frame id; Check: index
    };

    void handleTick(Seconds t, const Director& director);
    void handleCheck(const Event& e);
    void handleTxStart(const Event& e);
    void handleTxEnd(const Event& e);
    void handleCamGen(const Event& e);
    void activateStation(int idx, Seconds t);
    void hashMobility();
    void scheduleChannelCmds(const std::vector<BroadcastChannel::ScheduleCmd>& cmds);

    ScenarioConfig cfg_;
    std::uint64_t runSeed_;
    int nVru_ = 0;
    int nVeh_ = 0;
    Seconds endTime_ = 0.0;
    Seconds now_ = 0.0;
    Seconds lastTick_ = 0.0;

    EventQueue<Event> queue_;
    PedestrianField peds_;
    VehicleField vehicles_;
    std::unique_ptr<BroadcastChannel> channel_;

    std::vector<std::unique_ptr<EtsiStation>> etsi_;
    std::vector<std::unique_ptr<ImplicitStation>> implicit_;
    std::vector<TriggerState> standaloneTrig_;
    std::vector<VbsMode> standaloneMode_;

    std::vector<Seconds> activationAt_;
    std::vector<bool> activated_;

    MetricLog log_;
    std::vector<TransitionRecord> transitions_;
    std::uint32_t clusterIdCounter_ = 0;
    std::uint64_t tickIndex_ = 0;
    std::uint64_t mobilityHash_ = 1469598103934665603ULL;  // FNV-1a offset
};

/// All repetitions; repetition r runs with seed ^ r.
std::vector<RunResult> runScenario(const ScenarioConfig& cfg, const Director& director = {});

RunResult runRepetition(const ScenarioConfig& cfg, int repetition, const Director& director = {});

}  // namespace vamsim
