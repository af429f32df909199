#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vamsim/channel.hpp"
#include "vamsim/core.hpp"
#include "vamsim/metrics.hpp"
#include "vamsim/report.hpp"
#include "vamsim/scenario.hpp"
#include "vamsim/scenarios.hpp"
#include "vamsim/simulation.hpp"
#include "vamsim/trigger.hpp"

namespace py = pybind11;
using namespace vamsim;

namespace {

Scheme parseScheme(const std::string& name) {
    const auto s = schemeFromString(name);
    if (!s) throw std::invalid_argument("unknown scheme '" + name + "'");
    return *s;
}

ScenarioConfig configFrom(const std::string& path, const py::dict& overrides) {
    ScenarioConfig cfg = path.empty() ? ScenarioConfig{} : loadScenarioConfig(path);
    for (const auto& item : overrides)
        applyConfigKey(cfg, py::cast<std::string>(item.first),
                       py::cast<std::string>(py::str(item.second)));
    cfg.validate();
    return cfg;
}

py::dict summarizeRuns(Scheme scheme, const std::vector<RunResult>& runs,
                       const ScenarioConfig& cfg) {
    const auto agg = aggregate(scheme, runs, cfg);
    py::dict d;
    d["scheme"] = toString(scheme);
    d["generations_per_station"] = agg.gensPerStation;
    d["mean_igg"] = agg.meanIgg;
    d["mean_awareness"] = agg.meanAwareness;
    d["pdr"] = agg.pdr;
    d["zero_generation_fraction"] = agg.zeroGenFraction;
    d["mobility_hashes"] = agg.mobilityHashes;
    py::dict bins;
    for (const auto& [bin, means] : agg.ipgBinMeans) bins[py::int_(bin)] = means;
    d["mean_ipg_by_bin"] = bins;
    return d;
}

}  // namespace

PYBIND11_MODULE(_vamsim, m) {
    m.doc() = "VRU awareness message clustering simulator (C++ core)";

    m.def("distance", [](double ax, double ay, double bx, double by) {
        return distance({ax, ay}, {bx, by});
    }, py::arg("ax"), py::arg("ay"), py::arg("bx"), py::arg("by"));

    m.def("within_coverage", [](double px, double py_, double cx, double cy, double r) {
        return withinCoverage({px, py_}, CoverageOffer{{cx, cy}, r});
    }, py::arg("px"), py::arg("py"), py::arg("cx"), py::arg("cy"), py::arg("radius"));

    m.def("analytical_pdr", [](int stations, double rateHz, double airtime) {
        return analyticalPdr(stations, rateHz, airtime, MacConfig{});
    }, py::arg("stations"), py::arg("rate_hz"), py::arg("frame_airtime_s"),
       "Closed-form broadcast PDR approximation");

    m.def("frame_airtime", [](unsigned sizeBytes) { return frameAirtime(sizeBytes, PhyConfig{}); },
          py::arg("size_bytes"));

    m.def("account_messages",
          [](const std::string& scheme, double duration, double leaderIgg, int members,
             int batches) {
              return accountMessages(parseScheme(scheme), {duration, leaderIgg, members, batches});
          },
          py::arg("scheme"), py::arg("duration_s") = 30.0, py::arg("leader_igg_s") = 3.0,
          py::arg("members") = 5, py::arg("join_confirm_batches") = 1,
          "Expected message count for the 30 s cluster lifecycle");

    m.def("simulated_accounting", [](const std::string& scheme) {
        return runMessageAccounting(parseScheme(scheme)).messageCount;
    }, py::arg("scheme"), "Message count from the simulated six-pedestrian lifecycle");

    m.def("pdr_table", [](std::vector<double> separations, std::vector<int> clusterSizes,
                          double rateHz) {
        PdrTableParams params;
        if (!separations.empty()) params.separationsM = std::move(separations);
        if (!clusterSizes.empty()) params.clusterSizes = std::move(clusterSizes);
        if (rateHz > 0.0) params.msgRateHz = rateHz;
        py::list rows;
        for (const auto& row : buildPdrTable(params)) {
            py::dict d;
            d["scheme"] = row.scheme;
            d["pdr"] = row.pdr;
            rows.append(d);
        }
        return rows;
    }, py::arg("separations") = std::vector<double>{}, py::arg("cluster_sizes") = std::vector<int>{},
       py::arg("rate_hz") = -1.0);

    m.def("run_scenario", [](const std::string& configPath, const py::dict& overrides) {
        const ScenarioConfig cfg = configFrom(configPath, overrides);
        return summarizeRuns(cfg.scheme, runScenario(cfg), cfg);
    }, py::arg("config_path") = std::string{}, py::arg("overrides") = py::dict{},
       "Run a scenario and return per-repetition metric summaries");

    m.def("compare_schemes", [](const std::string& configPath, const std::vector<std::string>& names,
                                const py::dict& overrides) {
        const ScenarioConfig base = configFrom(configPath, overrides);
        py::list out;
        for (const auto& name : names) {
            ScenarioConfig cfg = base;
            cfg.scheme = parseScheme(name);
            out.append(summarizeRuns(cfg.scheme, runScenario(cfg), cfg));
        }
        return out;
    }, py::arg("config_path") = std::string{},
       py::arg("schemes") = std::vector<std::string>{"standalone", "implicitCluster"},
       py::arg("overrides") = py::dict{},
       "Run several schemes on identical mobility traces");

#ifdef VAMSIM_VERSION
    m.attr("__version__") = VAMSIM_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
