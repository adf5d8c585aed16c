// Command-line front end over the ecsim C API.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecsim/ecsim.h"

namespace {

struct ScenarioDeleter {
    void operator()(ecsim_scenario* s) const { ecsim_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<ecsim_scenario, ScenarioDeleter>;

int report(ecsim_status status) {
    if (status == ECSIM_OK) return 0;
    std::fprintf(stderr, "error: %s: %s\n", ecsim_status_string(status), ecsim_last_error());
    return static_cast<int>(status);
}

struct Common {
    std::string scenario;
    std::optional<std::uint32_t> devices;
    std::optional<double> duration_min;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--devices", c.devices, "Override the scenario's device count");
    cmd->add_option("--duration-min", c.duration_min, "Override the simulated duration (minutes)");
}

ecsim_status load(const Common& c, ScenarioPtr& out) {
    ecsim_scenario* raw = nullptr;
    if (auto st = ecsim_scenario_load(c.scenario.c_str(), &raw); st != ECSIM_OK) return st;
    out.reset(raw);
    if (c.devices)
        if (auto st = ecsim_scenario_set_device_count(raw, *c.devices); st != ECSIM_OK) return st;
    if (c.duration_min)
        if (auto st = ecsim_scenario_set_duration_min(raw, *c.duration_min); st != ECSIM_OK) return st;
    return ECSIM_OK;
}

const char* engine_name(ecsim_engine e) { return e == ECSIM_ENGINE_BASELINE ? "baseline" : "renovated"; }

const char* policy_name(ecsim_policy p) {
    switch (p) {
        case ECSIM_POLICY_SINGLE_TIER: return "single_tier";
        case ECSIM_POLICY_TWO_TIER: return "two_tier";
        case ECSIM_POLICY_TWO_TIER_ORCHESTRATOR: return "two_tier_with_orchestrator";
    }
    return "?";
}

int cmd_run(const Common& c, const std::string& engine, std::optional<std::uint64_t> seed,
            const std::string& out, bool snapshots) {
    ScenarioPtr scenario;
    if (auto st = load(c, scenario); st != ECSIM_OK) return report(st);
    const ecsim_engine e = engine == "baseline" ? ECSIM_ENGINE_BASELINE : ECSIM_ENGINE_RENOVATED;
    ecsim_metrics m{};
    ecsim_run_stats s{};
    const std::uint64_t run_seed = seed.value_or(ecsim_scenario_master_seed(scenario.get()));
    const auto st = ecsim_run(scenario.get(), e, run_seed, snapshots ? ECSIM_RUN_SNAPSHOTS : 0u,
                              out.empty() ? nullptr : out.c_str(), &m, &s);
    if (st != ECSIM_OK) return report(st);
    std::printf("engine            %s\n", engine_name(e));
    std::printf("seed              %llu\n", static_cast<unsigned long long>(run_seed));
    std::printf("tasks generated   %llu\n", static_cast<unsigned long long>(m.tasks_generated));
    std::printf("completed         %llu\n", static_cast<unsigned long long>(m.completed));
    std::printf("failed (network)  %llu\n", static_cast<unsigned long long>(m.failed_network));
    std::printf("failed (mobility) %llu\n", static_cast<unsigned long long>(m.failed_mobility));
    std::printf("failed (vm)       %llu\n", static_cast<unsigned long long>(m.failed_vm));
    std::printf("failed (rel)      %.4f %%\n", m.failed_rel_pct);
    if (m.has_avg_service_time)
        std::printf("avg service time  %.6f s\n", m.avg_service_time_s);
    else
        std::printf("avg service time  n/a\n");
    std::printf("events dispatched %llu\n", static_cast<unsigned long long>(s.events_dispatched));
    std::printf("peak queue size   %llu\n", static_cast<unsigned long long>(s.peak_queue_size));
    std::printf("wall time         %.6f s\n", s.wall_time_s);
    return 0;
}

int cmd_bench(const Common& c, const std::string& sweep, std::uint32_t iterations, const std::string& out) {
    ScenarioPtr scenario;
    if (auto st = load(c, scenario); st != ECSIM_OK) return report(st);
    std::vector<ecsim_bench_row> rows(64);
    std::size_t count = 0;
    const auto st = ecsim_bench(scenario.get(), sweep.c_str(), iterations, out.c_str(), rows.data(), rows.size(), &count);
    if (st != ECSIM_OK) return report(st);
    std::printf("%-14s %10s %-10s %14s %12s %16s\n", "sweep_var", "value", "engine", "mean_wall_s", "sd_wall_s",
                "mean_peak_queue");
    for (std::size_t i = 0; i < count && i < rows.size(); ++i)
        std::printf("%-14s %10g %-10s %14.6f %12.6f %16.1f\n", rows[i].sweep_var, rows[i].value,
                    engine_name(rows[i].engine), rows[i].mean_wall_s, rows[i].sd_wall_s, rows[i].mean_peak_queue);
    for (std::size_t i = 0; i + 1 < count && i + 1 < rows.size(); i += 2)
        if (rows[i + 1].mean_wall_s > 0)
            std::printf("speedup at %s=%g: %.2fx\n", rows[i].sweep_var, rows[i].value,
                        rows[i].mean_wall_s / rows[i + 1].mean_wall_s);
    return 0;
}

int cmd_validate(const Common& c, std::uint32_t runs, const std::string& out, bool matched) {
    ScenarioPtr scenario;
    if (auto st = load(c, scenario); st != ECSIM_OK) return report(st);
    std::vector<ecsim_ks_row> rows(32);
    std::size_t count = 0;
    const auto st = ecsim_validate(scenario.get(), runs, matched ? ECSIM_VALIDATE_MATCHED_SEEDS : 0u, out.c_str(),
                                   rows.data(), rows.size(), &count);
    if (st != ECSIM_OK) return report(st);
    std::printf("%-28s %-18s %10s %10s %s\n", "architecture", "metric", "D", "p", "reject(0.05)");
    for (std::size_t i = 0; i < count && i < rows.size(); ++i)
        std::printf("%-28s %-18s %10.4f %10.4f %s\n", policy_name(rows[i].architecture), rows[i].metric, rows[i].d,
                    rows[i].p_value, rows[i].reject ? "yes" : "no");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge/cloud offloading simulator with baseline and event-driven engines"};
    app.set_version_flag("--version", std::string(ecsim_version()));
    app.require_subcommand(1);

    Common run_common;
    std::string engine = "renovated";
    std::optional<std::uint64_t> seed;
    std::string run_out;
    bool snapshots = false;
    auto* run = app.add_subcommand("run", "Run one simulation");
    add_common(run, run_common);
    run->add_option("--engine", engine, "baseline or renovated")->check(CLI::IsMember({"baseline", "renovated"}));
    run->add_option("--seed", seed, "Run seed (defaults to the scenario's master_seed)");
    run->add_option("--out", run_out, "Directory for metrics.csv, run_stats.csv, locations.csv");
    run->add_flag("--snapshots", snapshots, "Log per-AP device counts to locations.csv");

    Common bench_common;
    std::string sweep;
    std::uint32_t iterations = 30;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Wall-time sweep over device count or duration");
    add_common(bench, bench_common);
    bench->add_option("--sweep", sweep, "devices=A:B:STEP or duration-min=A:B:STEP")->required();
    bench->add_option("--iterations", iterations, "Runs per sweep point and engine")->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "Directory for bench.csv")->required();

    Common validate_common;
    std::uint32_t runs = 500;
    std::string validate_out;
    bool matched = false;
    auto* val = app.add_subcommand("validate", "Cross-engine KS equivalence campaign");
    add_common(val, validate_common);
    val->add_option("--runs", runs, "Runs per engine and architecture (>= 30)");
    val->add_option("--out", validate_out, "Directory for ks_report.csv, qq_<metric>.csv, metrics.csv")->required();
    val->add_flag("--matched-seeds", matched, "Give both engines the same seeds (D = 0 expected)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_common, engine, seed, run_out, snapshots);
    if (bench->parsed()) return cmd_bench(bench_common, sweep, iterations, bench_out);
    if (val->parsed()) return cmd_validate(validate_common, runs, validate_out, matched);
    return 1;
}
