// Command-line front end: gain calculator, scenario simulator and parameter
// sweeps over the built-in scenario registry.
//
// Exit codes: 0 success, 2 failed --assert-no-overshoot, 1 error.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nosm/csv.hpp"
#include "nosm/scenario.hpp"

namespace fs = std::filesystem;
using namespace nosm;

namespace {

struct CommonOpts {
    std::string configFile;
    std::optional<double> dt;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> controller;
    std::string outDir = "out";
};

void apply_common(ScenarioSpec& spec, const CommonOpts& o) {
    if (!o.configFile.empty()) {
        std::ifstream f(o.configFile);
        if (!f) throw std::runtime_error("cannot read config file: " + o.configFile);
        std::stringstream ss;
        ss << f.rdbuf();
        merge_json_into(spec, ss.str());
    }
    if (o.dt) spec.sim.dt = *o.dt;
    if (o.seed) spec.sim.seed = *o.seed;
    if (o.controller) spec.controller = controller_from_string(*o.controller);
}

void print_condition_report(const ConditionReport& rep) {
    std::cout << "zone: " << to_string(rep.zone) << "\n";
    for (const ConditionEntry& e : rep.entries) {
        std::cout << (e.pass ? "  [ok]   " : "  [FAIL] ") << e.name;
        std::cout << "  (slack " << e.slack << (e.required ? ")" : ", informational)") << "\n";
    }
}

int cmd_gains(const std::string& scenarioName, const CommonOpts& opts,
              std::optional<double> e1Init, std::optional<double> e2Init) {
    ScenarioSpec spec = get_scenario(scenarioName.empty() ? "example41" : scenarioName);
    apply_common(spec, opts);

    const double e1 = e1Init.value_or(spec.plant == PlantKind::DoubleIntegrator
                                          ? spec.ref.build().value(0.0) - spec.x1_0
                                          : spec.e1_0);
    const double e2 = e2Init.value_or(spec.plant == PlantKind::DoubleIntegrator
                                          ? spec.ref.build().d1(0.0) - spec.x2_0
                                          : spec.e2_0);

    const ReachParams rp =
        select_reach_params(spec.gains, spec.reach.kc, spec.reach.e1c, spec.reach.e2c);
    std::cout << "reach params: e1c = " << rp.e1c << ", e2c = " << rp.e2c
              << ", kc = " << rp.kc << ", rhoC = " << rp.rhoC << "\n";

    const SwitchErrors se = predict_switch_errors({e1, e2}, rp);
    std::cout << "initial errors: e1(0) = " << e1 << ", e2(0) = " << e2 << "\n";
    std::cout << "switch errors (design values at tc): e1(tc) = " << se.e1tc
              << ", e2(tc) = " << se.e2tc << "\n";
    std::cout << "zone: " << to_string(classify_zone(se)) << "\n";

    const GainSet g = determine_gains(se, spec.gains, rp);
    const RhoResult rr = determine_rho(se, g.k1, g.k2, spec.gains);
    std::cout << "k1 = " << g.k1 << "\nk2 = " << g.k2 << "\ne2max = " << rr.e2max
              << "\nrho = " << g.rho << "\n";

    print_condition_report(validate_conditions(g, se, spec.gains));
    return 0;
}

int cmd_simulate(const std::string& scenarioName, const CommonOpts& opts,
                 bool assertNoOvershoot) {
    ScenarioSpec spec = get_scenario(scenarioName);
    apply_common(spec, opts);

    fs::create_directories(opts.outDir);
    const ScenarioOutcome out = run_scenario(spec);

    bool overshoot = false;
    if (spec.plant == PlantKind::Uav) {
        write_uav_trace_csv(opts.outDir + "/" + spec.name + "_trace.csv", out.uav);
        std::vector<SimEvent> all = out.uav.globalEvents;
        for (int c = 0; c < kNumChannels; ++c)
            all.insert(all.end(), out.uav.channelEvents[c].begin(),
                       out.uav.channelEvents[c].end());
        std::sort(all.begin(), all.end(),
                  [](const SimEvent& a, const SimEvent& b) { return a.t < b.t; });
        write_events_csv(opts.outDir + "/" + spec.name + "_events.csv", all);
        for (int c = 0; c < kNumChannels; ++c) {
            std::cout << "[" << to_string(static_cast<Channel>(c)) << "]\n"
                      << metrics_summary(out.channelMetrics[c]);
            if (c < 3) overshoot = overshoot || out.channelMetrics[c].overshoot.overshoot;
        }
    } else {
        write_trace_csv(opts.outDir + "/" + spec.name + "_trace.csv", out.scalar.trace);
        write_events_csv(opts.outDir + "/" + spec.name + "_events.csv",
                         out.scalar.trace.events);
        std::cout << metrics_summary(out.metrics);
        overshoot = out.metrics.overshoot.overshoot;
    }
    std::cout << "wrote " << opts.outDir << "/" << spec.name << "_trace.csv\n";

    if (assertNoOvershoot && overshoot) {
        std::cerr << "assertion failed: overshoot detected\n";
        return 2;
    }
    return 0;
}

struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

SweepAxis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("sweep parameter must look like name=v1,v2,... : " + text);
    SweepAxis axis;
    axis.key = text.substr(0, eq);
    const std::string rhs = text.substr(eq + 1);
    // either "a..b" (integer range) or comma list
    const auto dots = rhs.find("..");
    if (dots != std::string::npos) {
        const long lo = std::stol(rhs.substr(0, dots));
        const long hi = std::stol(rhs.substr(dots + 2));
        for (long v = lo; v <= hi; ++v) axis.values.push_back(static_cast<double>(v));
    } else {
        std::stringstream ss(rhs);
        std::string item;
        while (std::getline(ss, item, ',')) axis.values.push_back(std::stod(item));
    }
    if (axis.values.empty()) throw std::runtime_error("empty sweep axis: " + text);
    return axis;
}

int cmd_sweep(const std::string& scenarioName, const CommonOpts& opts,
              const std::vector<std::string>& params, std::size_t maxCells,
              unsigned jobs) {
    ScenarioSpec base = get_scenario(scenarioName);
    apply_common(base, opts);

    std::vector<SweepAxis> axes;
    for (const std::string& p : params) axes.push_back(parse_axis(p));
    if (axes.empty()) throw std::runtime_error("sweep needs at least one --param");

    std::size_t cells = 1;
    for (const SweepAxis& a : axes) cells *= a.values.size();
    if (cells > maxCells)
        throw std::runtime_error("sweep grid has " + std::to_string(cells) +
                                 " cells, cap is " + std::to_string(maxCells));

    struct Row {
        std::vector<double> coords;
        MetricsReport metrics;
        std::string status = "ok";
    };
    std::vector<Row> rows(cells);

    auto cellSpec = [&](std::size_t idx, Row& row) {
        ScenarioSpec spec = base;
        std::size_t rest = idx;
        for (const SweepAxis& a : axes) {
            const double v = a.values[rest % a.values.size()];
            rest /= a.values.size();
            spec.apply_override(a.key, v);
            row.coords.push_back(v);
        }
        return spec;
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= cells) return;
            Row& row = rows[idx];
            try {
                const ScenarioSpec spec = cellSpec(idx, row);
                const ScenarioOutcome out = run_scenario(spec);
                row.metrics = out.metrics;
            } catch (const std::exception& ex) {
                row.status = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::max(1u, jobs);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    fs::create_directories(opts.outDir);
    const std::string path = opts.outDir + "/" + base.name + "_sweep.csv";
    std::ofstream f(path);
    for (const SweepAxis& a : axes) f << a.key << ',';
    f << "overshoot,firstCrossing,sse1,sse2,settlingTime,chatteringIndex,status\n";
    for (const Row& r : rows) {
        for (double c : r.coords) f << c << ',';
        f << (r.metrics.overshoot.overshoot ? 1 : 0) << ','
          << r.metrics.overshoot.firstCrossing << ',' << r.metrics.sse1 << ','
          << r.metrics.sse2 << ',' << r.metrics.settlingTimeMeasured << ','
          << r.metrics.chatteringIndex << ',' << r.status << '\n';
    }
    std::cout << "wrote " << path << " (" << cells << " cells)\n";
    return 0;
}

int cmd_list() {
    for (const auto& [name, spec] : scenario_registry())
        std::cout << name << "  -  " << spec.summary << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-overshooting sliding mode control simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string scenario;
    std::optional<double> e1Init, e2Init;
    bool assertNoOvershoot = false;
    std::vector<std::string> sweepParams;
    std::size_t maxCells = 10000;
    unsigned jobs = std::thread::hardware_concurrency();

    auto addCommon = [&](CLI::App* c, bool needScenario) {
        if (needScenario)
            c->add_option("scenario,--scenario", scenario, "scenario name from `list`");
        c->add_option("--config", opts.configFile, "JSON file overriding scenario fields");
        c->add_option("--dt", opts.dt, "integration step override");
        c->add_option("--seed", opts.seed, "random seed override");
        c->add_option("--out-dir", opts.outDir, "output directory");
    };

    CLI::App* gains = app.add_subcommand("gains", "run the gain-determination pipeline");
    addCommon(gains, true);
    gains->add_option("--e1", e1Init, "initial error e1(0)");
    gains->add_option("--e2", e2Init, "initial error e2(0)");

    CLI::App* sim = app.add_subcommand("simulate", "simulate a scenario, write CSVs");
    addCommon(sim, true);
    sim->add_option("--controller", opts.controller, "ideal|smooth|pid|pi");
    sim->add_flag("--assert-no-overshoot", assertNoOvershoot,
                  "exit 2 if the overshoot detector fires");

    CLI::App* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep");
    addCommon(sweep, true);
    sweep->add_option("--controller", opts.controller, "ideal|smooth|pid|pi");
    sweep->add_option("--param", sweepParams, "axis as name=v1,v2,... or name=a..b");
    sweep->add_option("--max-cells", maxCells, "grid size cap");
    sweep->add_option("--jobs", jobs, "worker threads");

    CLI::App* list = app.add_subcommand("list", "list registered scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gains->parsed()) return cmd_gains(scenario, opts, e1Init, e2Init);
        if (sim->parsed()) return cmd_simulate(scenario, opts, assertNoOvershoot);
        if (sweep->parsed()) return cmd_sweep(scenario, opts, sweepParams, maxCells, jobs);
        if (list->parsed()) return cmd_list();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
