#include "vamsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vamsim {

const char* toString(Scheme s) {
    switch (s) {
        case Scheme::Standalone: return "standalone";
        case Scheme::EtsiCluster: return "etsiCluster";
        case Scheme::ImplicitCluster: return "implicitCluster";
    }
    return "?";
}

std::optional<Scheme> schemeFromString(const std::string& s) {
    if (s == "standalone") return Scheme::Standalone;
    if (s == "etsiCluster") return Scheme::EtsiCluster;
    if (s == "implicitCluster") return Scheme::ImplicitCluster;
    return std::nullopt;
}

namespace {
std::vector<double> gapsOf(const std::vector<Seconds>& times) {
    std::vector<double> gaps;
    if (times.size() < 2) return gaps;
    gaps.reserve(times.size() - 1);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) gaps.push_back(times[i + 1] - times[i]);
    return gaps;
}
}  // namespace

std::vector<double> computeIpg(const MetricLog& log, StationId receiver, StationId sender) {
    auto it = log.receptions.find({receiver, sender});
    if (it == log.receptions.end()) return {};
    std::vector<Seconds> times;
    times.reserve(it->second.size());
    for (const auto& s : it->second) times.push_back(s.time);
    return gapsOf(times);
}

std::vector<double> computeIgg(const MetricLog& log, StationId station) {
    if (station >= log.generations.size()) return {};
    return gapsOf(log.generations[station]);
}

std::vector<IpgBin> ipgByDistanceBin(const MetricLog& log, double binWidthM) {
    std::map<int, std::pair<double, std::size_t>> acc;  // bin -> (sum, count)
    for (const auto& [pair, samples] : log.receptions) {
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            const double gap = samples[i + 1].time - samples[i].time;
            const int bin = static_cast<int>(samples[i + 1].distanceM / binWidthM);
            auto& [sum, count] = acc[bin];
            sum += gap;
            ++count;
        }
    }
    std::vector<IpgBin> bins;
    bins.reserve(acc.size());
    for (const auto& [bin, sc] : acc)
        bins.push_back({bin, sc.first / static_cast<double>(sc.second), sc.second});
    return bins;
}

std::vector<double> pooledIggGaps(const MetricLog& log) {
    std::vector<double> gaps;
    for (StationId s = 0; s < log.generations.size(); ++s) {
        auto g = computeIgg(log, s);
        gaps.insert(gaps.end(), g.begin(), g.end());
    }
    return gaps;
}

std::vector<double> computeAwareness(const MetricLog& log, std::span<const Seconds> evalTimes,
                                     Seconds window) {
    if (log.vruCount < 1) throw std::invalid_argument("computeAwareness: no VRUs in the log");
    std::vector<double> out;
    out.reserve(evalTimes.size());
    for (const Seconds t : evalTimes) {
        int visible = 0;
        for (int s = 0; s < log.vruCount; ++s) {
            const auto& events = log.awarenessEvents[static_cast<std::size_t>(s)];
            // events are sorted; any event in (t - window, t]?
            auto it = std::upper_bound(events.begin(), events.end(), t);
            if (it != events.begin() && *(it - 1) > t - window) ++visible;
        }
        out.push_back(static_cast<double>(visible) / static_cast<double>(log.vruCount));
    }
    return out;
}

int accountMessages(Scheme scheme, const AccountingAssumptions& a) {
    const int leaderVams = static_cast<int>(std::llround(a.durationS / a.leaderIggS));
    switch (scheme) {
        case Scheme::Standalone:
            return leaderVams * (a.nMembers + 1);
        case Scheme::ImplicitCluster:
            return leaderVams;
        case Scheme::EtsiCluster: {
            const int batches = std::clamp(a.joinConfirmBatches, 1, std::max(a.nMembers, 1));
            // lead offer + one request per member + confirms + cluster VAM
            // stream + break-up
            return 1 + a.nMembers + batches + leaderVams + 1;
        }
    }
    return 0;
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

namespace {
// Two-sided 95% Student-t multipliers, df = 1..30; beyond that the normal
// quantile is close enough.
constexpr double kT95[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                           2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                           2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                           2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
double t95(std::size_t df) {
    if (df == 0) return 0.0;
    if (df <= 30) return kT95[df - 1];
    return 1.96;
}
}  // namespace

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = values.size();
    if (values.empty()) return s;
    s.mean = mean(values);
    if (values.size() < 2) return s;  // interval flagged unavailable

    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.ciHalfWidth = t95(values.size() - 1) * stddev / std::sqrt(static_cast<double>(values.size()));
    s.ciAvailable = true;
    return s;
}

}  // namespace vamsim
