#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vamsim/report.hpp"
#include "vamsim/scenario.hpp"
#include "vamsim/scenarios.hpp"
#include "vamsim/simulation.hpp"

namespace fs = std::filesystem;
using namespace vamsim;

namespace {

struct CommonOpts {
    std::string configPath;
    std::string outDir = ".";
    std::string scheme;
    std::int64_t seed = -1;
    std::vector<std::string> overrides;
};

ScenarioConfig loadWithOverrides(const CommonOpts& opts) {
    ScenarioConfig cfg = loadScenarioConfig(opts.configPath);
    if (!opts.scheme.empty()) applyConfigKey(cfg, "scheme", opts.scheme);
    if (opts.seed >= 0) applyConfigKey(cfg, "seed", std::to_string(opts.seed));
    for (const auto& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        applyConfigKey(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

void writeAllCsvs(const std::string& dir, const std::vector<SchemeRuns>& all,
                  const ScenarioConfig& cfg) {
    fs::create_directories(dir);
    writeGenerationsCsv(dir + "/generations.csv", all);
    writeIggCsv(dir + "/igg.csv", all);
    writeIpgCsv(dir + "/ipg.csv", all, cfg);
    writeAwarenessCsv(dir + "/awareness.csv", all, cfg);
}

int cmdRun(const CommonOpts& opts) {
    const ScenarioConfig cfg = loadWithOverrides(opts);
    const auto runs = runScenario(cfg);
    const std::vector<SchemeRuns> all = {{cfg.scheme, &runs}};
    writeAllCsvs(opts.outDir, all, cfg);
    const auto agg = aggregate(cfg.scheme, runs, cfg);
    writeTextFile(opts.outDir + "/summary.txt", summaryText({agg}, cfg));
    std::cout << summaryText({agg}, cfg);
    return 0;
}

int cmdCompare(const CommonOpts& opts, const std::vector<std::string>& schemes) {
    if (schemes.size() < 2) throw std::invalid_argument("compare needs at least two schemes");
    ScenarioConfig cfg = loadWithOverrides(opts);

    std::vector<std::vector<RunResult>> results;
    std::vector<Scheme> parsed;
    for (const auto& name : schemes) {
        const auto s = schemeFromString(name);
        if (!s) throw std::invalid_argument("unknown scheme '" + name + "'");
        parsed.push_back(*s);
    }
    std::vector<AggregatedMetrics> aggregates;
    std::vector<SchemeRuns> all;
    results.reserve(parsed.size());
    for (const Scheme s : parsed) {
        ScenarioConfig each = cfg;
        each.scheme = s;  // same seeds: identical mobility traces
        results.push_back(runScenario(each));
        aggregates.push_back(aggregate(s, results.back(), each));
    }
    for (std::size_t i = 0; i < parsed.size(); ++i) all.push_back({parsed[i], &results[i]});

    writeAllCsvs(opts.outDir, all, cfg);
    const std::string report = compareText(aggregates, cfg);
    writeTextFile(opts.outDir + "/compare.txt", report);
    std::cout << report;
    return 0;
}

int cmdPdrTable(const std::vector<double>& separations, const std::vector<int>& clusterSizes,
                double rateHz, const std::string& outPath) {
    PdrTableParams params;
    if (!separations.empty()) params.separationsM = separations;
    if (!clusterSizes.empty()) params.clusterSizes = clusterSizes;
    if (rateHz > 0.0) params.msgRateHz = rateHz;
    const std::string text = pdrTableText(params);
    if (!outPath.empty()) writeTextFile(outPath, text);
    std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VRU awareness message clustering simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> schemes = {"standalone", "etsiCluster", "implicitCluster"};
    std::vector<double> separations;
    std::vector<int> clusterSizes;
    double rateHz = -1.0;
    std::string pdrOut;

    auto* run = app.add_subcommand("run", "Run one scenario and write per-metric CSVs");
    run->add_option("config", opts.configPath, "scenario config file")->required();
    run->add_option("--scheme", opts.scheme, "override the configured scheme");
    run->add_option("--seed", opts.seed, "override the configured seed");
    run->add_option("--out", opts.outDir, "output directory (default .)");
    run->add_option("--set", opts.overrides, "additional key=value config overrides");

    auto* compare = app.add_subcommand("compare", "Run several schemes on identical mobility");
    compare->add_option("config", opts.configPath, "scenario config file")->required();
    compare->add_option("--schemes", schemes, "schemes to compare")->delimiter(',');
    compare->add_option("--seed", opts.seed, "override the configured seed");
    compare->add_option("--out", opts.outDir, "output directory (default .)");
    compare->add_option("--set", opts.overrides, "additional key=value config overrides");

    auto* pdr = app.add_subcommand("pdrtable", "Print the analytical PDR table");
    pdr->add_option("--separations", separations, "pedestrian separations in m")->delimiter(',');
    pdr->add_option("--cluster-sizes", clusterSizes, "cluster size per separation")->delimiter(',');
    pdr->add_option("--rate", rateHz, "per-station message rate in Hz");
    pdr->add_option("--out", pdrOut, "also write the table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmdRun(opts);
        if (compare->parsed()) return cmdCompare(opts, schemes);
        if (pdr->parsed()) return cmdPdrTable(separations, clusterSizes, rateHz, pdrOut);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
