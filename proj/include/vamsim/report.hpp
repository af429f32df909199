#pragma once

#include <map>
#include <string>
#include <vector>

#include "vamsim/scenario.hpp"
#include "vamsim/simulation.hpp"

namespace vamsim {

/// Per-repetition scalars derived from a run, ready for cross-repetition
/// summaries.
struct AggregatedMetrics {
    Scheme scheme = Scheme::Standalone;
    std::vector<double> gensPerStation;   // per repetition: mean count
    std::vector<double> meanIgg;          // per repetition: pooled gap mean
    std::map<int, std::vector<double>> ipgBinMeans;  // bin -> per-rep means
    std::vector<double> meanAwareness;    // per repetition
    std::vector<double> pdr;              // per repetition, simulated
    std::vector<double> zeroGenFraction;  // stations with no generations
    std::vector<std::uint64_t> mobilityHashes;
};

AggregatedMetrics aggregate(Scheme scheme, const std::vector<RunResult>& runs,
                            const ScenarioConfig& cfg);

std::vector<Seconds> awarenessEvalTimes(const ScenarioConfig& cfg);

/// Deterministic float formatting shared by every writer.
std::string formatValue(double v);

struct SchemeRuns {
    Scheme scheme;
    const std::vector<RunResult>* runs;
};

/// One CSV per metric, columns (scheme, repetition, station-or-bin, value),
/// byte-identical for identical config and seed.
void writeGenerationsCsv(const std::string& path, const std::vector<SchemeRuns>& all);
void writeIggCsv(const std::string& path, const std::vector<SchemeRuns>& all);
void writeIpgCsv(const std::string& path, const std::vector<SchemeRuns>& all,
                 const ScenarioConfig& cfg);
void writeAwarenessCsv(const std::string& path, const std::vector<SchemeRuns>& all,
                       const ScenarioConfig& cfg);

std::string summaryText(const std::vector<AggregatedMetrics>& aggregates,
                        const ScenarioConfig& cfg);

/// Side-by-side scheme table plus the 30 s lifecycle message accounting and
/// the per-repetition mobility trace hashes.
std::string compareText(const std::vector<AggregatedMetrics>& aggregates,
                        const ScenarioConfig& cfg);

/// Analytical PDR table, rows = scheme, columns = pedestrian separation.
std::string pdrTableText(const PdrTableParams& params);

void writeTextFile(const std::string& path, const std::string& content);

}  // namespace vamsim
