#include "vamsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vamsim/metrics.hpp"
#include "vamsim/scenarios.hpp"

namespace vamsim {

std::string formatValue(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<Seconds> awarenessEvalTimes(const ScenarioConfig& cfg) {
    std::vector<Seconds> times;
    const Seconds start = cfg.warmupSeconds + cfg.awarenessWindow;
    const Seconds end = cfg.warmupSeconds + cfg.measureSeconds;
    for (Seconds t = start; t <= end; t += 1.0) times.push_back(t);
    return times;
}

AggregatedMetrics aggregate(Scheme scheme, const std::vector<RunResult>& runs,
                            const ScenarioConfig& cfg) {
    AggregatedMetrics agg;
    agg.scheme = scheme;
    const auto evalTimes = awarenessEvalTimes(cfg);
    for (const auto& run : runs) {
        const auto& log = run.log;
        double totalGens = 0.0;
        int zeroGen = 0;
        for (const auto& g : log.generations) {
            totalGens += static_cast<double>(g.size());
            if (g.empty()) ++zeroGen;
        }
        const double n = std::max<std::size_t>(log.generations.size(), 1);
        agg.gensPerStation.push_back(totalGens / static_cast<double>(n));
        agg.zeroGenFraction.push_back(static_cast<double>(zeroGen) / static_cast<double>(n));
        agg.meanIgg.push_back(mean(pooledIggGaps(log)));
        for (const auto& bin : ipgByDistanceBin(log)) agg.ipgBinMeans[bin.bin].push_back(bin.meanGap);
        agg.meanAwareness.push_back(mean(computeAwareness(log, evalTimes, cfg.awarenessWindow)));
        agg.pdr.push_back(run.channelStats.pdr());
        agg.mobilityHashes.push_back(run.mobilityHash);
    }
    return agg;
}

namespace {
std::ofstream openOut(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    return out;
}
}  // namespace

void writeTextFile(const std::string& path, const std::string& content) {
    auto out = openOut(path);
    out << content;
}

void writeGenerationsCsv(const std::string& path, const std::vector<SchemeRuns>& all) {
    auto out = openOut(path);
    out << "scheme,repetition,station,value\n";
    for (const auto& [scheme, runs] : all)
        for (std::size_t r = 0; r < runs->size(); ++r) {
            const auto& log = (*runs)[r].log;
            for (std::size_t s = 0; s < log.generations.size(); ++s)
                out << toString(scheme) << ',' << r << ',' << s << ','
                    << log.generations[s].size() << '\n';
        }
}

void writeIggCsv(const std::string& path, const std::vector<SchemeRuns>& all) {
    auto out = openOut(path);
    out << "scheme,repetition,station,value\n";
    for (const auto& [scheme, runs] : all)
        for (std::size_t r = 0; r < runs->size(); ++r) {
            const auto& log = (*runs)[r].log;
            for (std::size_t s = 0; s < log.generations.size(); ++s) {
                const auto gaps = computeIgg(log, static_cast<StationId>(s));
                if (gaps.empty()) continue;
                out << toString(scheme) << ',' << r << ',' << s << ','
                    << formatValue(mean(gaps)) << '\n';
            }
        }
}

void writeIpgCsv(const std::string& path, const std::vector<SchemeRuns>& all,
                 const ScenarioConfig&) {
    auto out = openOut(path);
    out << "scheme,repetition,bin,value\n";
    for (const auto& [scheme, runs] : all)
        for (std::size_t r = 0; r < runs->size(); ++r)
            for (const auto& bin : ipgByDistanceBin((*runs)[r].log))
                out << toString(scheme) << ',' << r << ',' << bin.bin << ','
                    << formatValue(bin.meanGap) << '\n';
}

void writeAwarenessCsv(const std::string& path, const std::vector<SchemeRuns>& all,
                       const ScenarioConfig& cfg) {
    auto out = openOut(path);
    const auto times = awarenessEvalTimes(cfg);
    out << "scheme,repetition,time,value\n";
    for (const auto& [scheme, runs] : all)
        for (std::size_t r = 0; r < runs->size(); ++r) {
            const auto values = computeAwareness((*runs)[r].log, times, cfg.awarenessWindow);
            for (std::size_t i = 0; i < times.size(); ++i)
                out << toString(scheme) << ',' << r << ',' << formatValue(times[i]) << ','
                    << formatValue(values[i]) << '\n';
        }
}

namespace {
std::string ciLine(const char* label, const std::vector<double>& values) {
    const Summary s = summarize(values);
    std::ostringstream os;
    os << "  " << label << ": " << formatValue(s.mean);
    if (s.ciAvailable)
        os << " +- " << formatValue(s.ciHalfWidth) << " (95% CI, n=" << s.n << ")";
    else
        os << " (single repetition, no interval)";
    os << '\n';
    return os.str();
}
}  // namespace

std::string summaryText(const std::vector<AggregatedMetrics>& aggregates,
                        const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << "scenario: segment " << cfg.segmentLength << " m, " << cfg.pedestrianDensity
       << " ped/100 m, " << (cfg.lanes > 0 ? cfg.vehicleDensity : 0.0) << " veh/km/lane x "
       << cfg.lanes << " lanes, warmup " << cfg.warmupSeconds << " s, measure "
       << cfg.measureSeconds << " s, " << cfg.repetitions << " repetition(s), seed " << cfg.seed
       << (cfg.lossless ? ", lossless channel" : "") << "\n\n";
    for (const auto& agg : aggregates) {
        os << "[" << toString(agg.scheme) << "]\n";
        os << ciLine("generated VAMs per station", agg.gensPerStation);
        os << ciLine("mean IGG [s]", agg.meanIgg);
        for (const auto& [bin, means] : agg.ipgBinMeans) {
            std::ostringstream label;
            label << "mean IPG " << bin * 100 << "-" << (bin + 1) * 100 << " m [s]";
            os << ciLine(label.str().c_str(), means);
        }
        os << ciLine("mean awareness", agg.meanAwareness);
        os << ciLine("simulated PDR", agg.pdr);
        os << ciLine("stations with zero generations", agg.zeroGenFraction);
        os << '\n';
    }
    return os.str();
}

std::string compareText(const std::vector<AggregatedMetrics>& aggregates,
                        const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << summaryText(aggregates, cfg);

    os << "mobility trace hashes (identical columns = paired scenarios)\n";
    os << "  repetition";
    for (const auto& agg : aggregates) os << ' ' << toString(agg.scheme);
    os << '\n';
    const std::size_t reps = aggregates.empty() ? 0 : aggregates.front().mobilityHashes.size();
    for (std::size_t r = 0; r < reps; ++r) {
        os << "  " << r;
        for (const auto& agg : aggregates) os << ' ' << std::hex << agg.mobilityHashes[r] << std::dec;
        os << '\n';
    }

    os << "\nexpected messages, 30 s six-pedestrian lifecycle (lossless)\n";
    for (Scheme s : {Scheme::Standalone, Scheme::EtsiCluster, Scheme::ImplicitCluster}) {
        if (s == Scheme::EtsiCluster) {
            os << "  " << toString(s) << ": " << accountMessages(s, {30.0, 3.0, 5, 1}) << ".."
               << accountMessages(s, {30.0, 3.0, 5, 5}) << " (join-confirm batching)\n";
        } else {
            os << "  " << toString(s) << ": " << accountMessages(s) << '\n';
        }
    }
    return os.str();
}

std::string pdrTableText(const PdrTableParams& params) {
    const auto rows = buildPdrTable(params);
    std::ostringstream os;
    os << "analytical PDR, " << params.segmentLengthM << " m segment, "
       << params.msgRateHz << " Hz per station\n";
    os << "scheme";
    for (std::size_t c = 0; c < params.separationsM.size(); ++c)
        os << ",d=" << params.separationsM[c] << "m(n=" << params.stationsFor(params.separationsM[c])
           << ",cluster=" << params.clusterSizes[c] << ")";
    os << '\n';
    for (const auto& row : rows) {
        os << row.scheme;
        for (double v : row.pdr) os << ',' << formatValue(v * 100.0) << '%';
        os << '\n';
    }
    return os.str();
}

}  // namespace vamsim
