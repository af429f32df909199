#pragma once

#include <cstdint>
#include <random>

namespace vamsim {

/// Purpose tag for deriving independent per-station random streams.
/// Streams are keyed on (runSeed, stationId, purpose) so adding stations or
/// reordering events never perturbs another station's draws.
enum class RngPurpose : std::uint64_t {
    Placement = 1,   // scenario-level (stationId 0)
    Activation = 2,
    Holdoff = 3,
    Backoff = 4,
    CamPhase = 5,
    Speed = 6,
};

/// mt19937_64 with hand-rolled uniform draws. std::uniform_*_distribution is
/// implementation-defined, which would break bit-identical traces across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint32_t uniformInt(std::uint32_t n) {
        if (n <= 1) return 0;
        const std::uint64_t span = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return static_cast<std::uint32_t>(v % span);
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t streamSeed(std::uint64_t runSeed, std::uint32_t stationId, RngPurpose purpose) {
    std::uint64_t s = splitmix64(runSeed);
    s = splitmix64(s ^ (static_cast<std::uint64_t>(stationId) << 32 | static_cast<std::uint64_t>(purpose)));
    return s;
}

inline Rng streamFor(std::uint64_t runSeed, std::uint32_t stationId, RngPurpose purpose) {
    return Rng(streamSeed(runSeed, stationId, purpose));
}

}  // namespace vamsim
