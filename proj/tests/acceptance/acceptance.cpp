// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ecsim/campaign.hpp"
#include "ecsim/load.hpp"
#include "ecsim/mobility.hpp"
#include "ecsim/scenario.hpp"
#include "ecsim/simulation.hpp"
#include "ecsim/stats.hpp"

using namespace ecsim;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::filesystem::path scenario_path(const char* name) { return std::filesystem::path(ECSIM_SCENARIO_DIR) / name; }

// ---------------------------------------------------------------------------
// Random topology/load battery shared by criteria 1 and 2.

struct Battery {
    std::uint64_t seed;
    std::size_t devices;
    SimTime horizon;
    std::vector<AccessPoint> aps;
    std::vector<TaskTypeProfile> profiles;
    std::vector<std::uint32_t> profile_of;
};

std::vector<Battery> make_battery(std::size_t count) {
    std::mt19937_64 gen(20210913);
    std::uniform_int_distribution<std::size_t> devices(3, 200), locations(2, 14), n_profiles(1, 4);
    std::uniform_real_distribution<double> horizon(60.0, 3600.0), dwell(20.0, 900.0);
    std::uniform_real_distribution<double> mean(1.0, 30.0), active(10.0, 300.0), idle(0.0, 300.0);
    std::vector<Battery> out;
    for (std::size_t i = 0; i < count; ++i) {
        Battery b;
        b.seed = gen();
        b.devices = devices(gen);
        b.horizon = horizon(gen);
        const std::size_t l = locations(gen);
        for (std::size_t a = 0; a < l; ++a) b.aps.push_back({static_cast<ApId>(a), 0, 0, dwell(gen), 100.0});
        const std::size_t np = n_profiles(gen);
        for (std::size_t p = 0; p < np; ++p) {
            TaskTypeProfile tp;
            tp.name = "p" + std::to_string(p);
            tp.weight = 1.0 / static_cast<double>(np);
            tp.interarrival_mean_s = mean(gen);
            tp.active_s = active(gen);
            tp.idle_s = idle(gen);
            b.profiles.push_back(tp);
        }
        for (std::size_t d = 0; d < b.devices; ++d) b.profile_of.push_back(static_cast<std::uint32_t>(gen() % np));
        out.push_back(std::move(b));
    }
    return out;
}

Outcome mobility_equivalence() {
    std::uint64_t checks = 0, mismatches = 0;
    for (const auto& b : make_battery(50)) {
        std::vector<Trajectory> trajs;
        for (DeviceId d = 0; d < b.devices; ++d) {
            auto s = MobilityStreams::for_device(b.seed, d);
            trajs.push_back(precompute_trajectory(b.aps, b.horizon, s.dwell, s.destination));
        }
        const TrajectoryTable table(b.aps, std::move(trajs));

        std::vector<MobilityStreams> streams;
        for (DeviceId d = 0; d < b.devices; ++d) streams.push_back(MobilityStreams::for_device(b.seed, d));
        Kernel k;
        auto state = init_event_driven(
            b.devices, b.aps, [&](DeviceId d) -> MobilityStreams& { return streams[d]; }, k);
        auto compare_all = [&](SimTime t) {
            for (DeviceId d = 0; d < b.devices; ++d) {
                ++checks;
                if (state.location_of(d) != table.location_at(d, t)) ++mismatches;
            }
        };
        compare_all(0.0);
        k.run(b.horizon, [&](const Event& e, Kernel& kk) {
            auto& s = streams[e.payload.device];
            apply_movement(state, e.payload.device, kk, s.dwell, s.destination);
            compare_all(e.time);
        });
        compare_all(b.horizon);
    }
    return {mismatches == 0, std::to_string(checks) + " location checks, " + std::to_string(mismatches) + " mismatches"};
}

Outcome load_equivalence() {
    std::uint64_t tasks = 0;
    std::size_t differing = 0;
    for (const auto& b : make_battery(50)) {
        std::vector<std::pair<DeviceId, SimTime>> eager, lazy;
        for (DeviceId d = 0; d < b.devices; ++d) {
            Stream s(b.seed, d, StreamPurpose::Load);
            for (SimTime t : load::generate_all(b.profiles[b.profile_of[d]], b.horizon, s)) eager.emplace_back(d, t);
        }
        LazyLoadGenerator gen(b.profiles, b.profile_of, b.seed, b.horizon);
        Kernel k;
        gen.schedule_initial(k);
        k.run(b.horizon, [&](const Event& e, Kernel& kk) {
            if (e.kind == EventKind::ActivePeriodStart)
                gen.schedule_period(e.payload.device, kk);
            else if (e.kind == EventKind::TaskArrival)
                lazy.emplace_back(e.payload.device, e.time);
        });
        std::sort(eager.begin(), eager.end());
        std::sort(lazy.begin(), lazy.end());
        tasks += eager.size();
        if (eager != lazy) ++differing;
    }
    return {differing == 0,
            std::to_string(tasks) + " arrivals over 50 scenarios, " + std::to_string(differing) + " scenarios differ"};
}

// ---------------------------------------------------------------------------

Outcome determinism_and_equality() {
    ScenarioConfig cfg = parse_scenario(scenario_path("desk.json"));
    int runs = 0, failures = 0;
    for (auto variant : {PolicyVariant::SingleTier, PolicyVariant::TwoTier, PolicyVariant::TwoTierWithOrchestrator}) {
        cfg.policy.variant = variant;
        for (std::uint64_t seed : {1u, 99u, 2021u}) {
            MetricsSummary per_engine[2];
            for (Engine e : {Engine::Baseline, Engine::Renovated}) {
                const auto a = run_scenario(cfg, e, seed).summary;
                const auto b = run_scenario(cfg, e, seed).summary;
                runs += 2;
                if (csv::metrics_fields_deterministic(a) != csv::metrics_fields_deterministic(b)) ++failures;
                per_engine[static_cast<int>(e)] = a;
            }
            const auto& x = per_engine[0];
            const auto& y = per_engine[1];
            if (x.tasks_generated != y.tasks_generated || x.completed != y.completed ||
                x.failed_network != y.failed_network || x.failed_mobility != y.failed_mobility ||
                x.failed_vm != y.failed_vm)
                ++failures;
        }
    }
    return {failures == 0, std::to_string(runs) + " runs, " + std::to_string(failures) + " mismatches"};
}

Outcome conservation() {
    std::mt19937_64 gen(777);
    std::uniform_int_distribution<std::uint32_t> devices(5, 150);
    std::uniform_int_distribution<std::size_t> locations(2, 10);
    std::uniform_real_distribution<double> minutes(2.0, 20.0), dwell(30.0, 600.0), unit(0.0, 1.0);
    std::uint64_t events = 0;
    std::vector<std::string> problems;
    for (int run = 0; run < 20; ++run) {
        ScenarioConfig cfg;
        cfg.duration_min = minutes(gen);
        cfg.device_count = devices(gen);
        const std::size_t l = locations(gen);
        for (std::size_t a = 0; a < l; ++a) cfg.access_points.push_back({static_cast<ApId>(a), 0, 0, dwell(gen), 50.0 + 250.0 * unit(gen)});
        cfg.profiles.push_back({"a", 0.5, 2.0 + 10 * unit(gen), 60, 30, 5e5 * (0.1 + unit(gen)), 2e5, 2000 + 20000 * unit(gen), 10 + 30 * unit(gen), unit(gen)});
        cfg.profiles.push_back({"b", 0.5, 5.0 + 20 * unit(gen), 120, 60, 2e6 * (0.1 + unit(gen)), 1e6, 500 + 5000 * unit(gen), 5 + 20 * unit(gen), unit(gen)});
        cfg.policy = {static_cast<PolicyVariant>(run % 3), 50.0 + 40.0 * unit(gen)};
        cfg.edge = {1 + static_cast<std::uint32_t>(gen() % 3), 2000 + 6000 * unit(gen)};
        cfg.cloud = {1 + static_cast<std::uint32_t>(gen() % 4), 10000 + 20000 * unit(gen)};
        cfg.network.wlan_device_capacity = 5 + gen() % 60;
        cfg.network.wan_transfer_capacity = 1 + gen() % 20;

        RunOptions opts;
        opts.engine = run % 2 == 0 ? Engine::Baseline : Engine::Renovated;
        opts.seed = gen();
        bool count_ok = true;
        opts.observer = [&](const Event&, const Simulation& sim) {
            ++events;
            std::uint32_t total = 0;
            for (ApId a = 0; a < l; ++a) total += sim.device_count_at(a);
            if (total != cfg.device_count) count_ok = false;
        };
        Simulation sim(cfg, std::move(opts));
        const auto r = sim.run();
        const auto& m = r.summary;
        const std::string tag = "run " + std::to_string(run) + ": ";
        if (!count_ok) problems.push_back(tag + "device count drifted");
        if (m.tasks_generated != m.completed + m.failed()) problems.push_back(tag + "accounting identity broken");
        if (sim.compute().total_utilization() != 0.0) problems.push_back(tag + "VM utilization not back to 0");
        if (sim.network().active_wan_transfers() != 0) problems.push_back(tag + "WAN counter not back to 0");
        if (sim.in_flight() != 0) problems.push_back(tag + "tasks left in flight");
    }
    std::string detail = "20 runs, " + std::to_string(events) + " events checked";
    for (const auto& p : problems) detail += "; " + p;
    return {problems.empty(), detail};
}

Outcome ks_correctness() {
    using namespace stats;
    bool ok = true;
    std::string detail;
    const std::vector<double> same{4, 1, 3, 3}, a{1, 2}, b{1.5, 2.5}, c{1, 2, 3, 4}, d{2, 3, 4, 5};
    const double d0 = ks_statistic(same, same), d1 = ks_statistic(a, b), d2 = ks_statistic(c, d);
    ok &= std::abs(d0) <= 1e-12 && std::abs(d1 - 0.5) <= 1e-12 && std::abs(d2 - 0.25) <= 1e-12;
    const double p = ks_p_value(0.036, 500, 500);
    ok &= p >= 0.88 && p <= 0.91;

    std::mt19937_64 gen(5150);
    std::normal_distribution<double> dist(0.0, 1.0);
    int rejects = 0;
    std::vector<double> x(500), y(500);
    for (int trial = 0; trial < 1000; ++trial) {
        for (auto& v : x) v = dist(gen);
        for (auto& v : y) v = dist(gen);
        if (ks_test(x, y).rejects(kDefaultAlpha)) ++rejects;
    }
    const double rate = rejects / 1000.0;
    ok &= rate >= 0.02 && rate <= 0.08;
    char buf[200];
    std::snprintf(buf, sizeof buf, "D examples %.3g/%.3g/%.3g, p(0.036,500,500)=%.4f, rejection rate %.3f", d0, d1,
                  d2, p, rate);
    detail = buf;
    return {ok, detail};
}

Outcome validation_campaign() {
    ScenarioConfig cfg = parse_scenario(scenario_path("desk.json"));
    cfg.device_count = 100;
    cfg.duration_min = 10;
    ValidationOptions opts;
    opts.runs_per_engine = 200;
    const auto report = validate_equivalence(cfg, opts);
    int above = 0;
    std::string rejected;
    for (const auto& row : report.ks) {
        if (row.ks.p_value > 0.05) {
            ++above;
        } else {
            char buf[120];
            std::snprintf(buf, sizeof buf, " [%s/%s D=%.3f p=%.4f]", std::string(to_string(row.architecture)).c_str(),
                          row.metric.c_str(), row.ks.d, row.ks.p_value);
            rejected += buf;
        }
    }
    return {above >= 14, std::to_string(above) + "/" + std::to_string(report.ks.size()) + " cells with p > 0.05" +
                             (rejected.empty() ? "" : "; low:" + rejected)};
}

Outcome queue_scaling() {
    ScenarioConfig cfg = parse_scenario(scenario_path("default.json"));
    cfg.device_count = 200;
    double peak[2][2];
    for (Engine e : {Engine::Baseline, Engine::Renovated})
        for (int i = 0; i < 2; ++i) {
            cfg.duration_min = i == 0 ? 30 : 150;
            peak[static_cast<int>(e)][i] =
                static_cast<double>(run_scenario(cfg, e, cfg.master_seed).stats.peak_queue_size);
        }
    const double base_ratio = peak[0][1] / peak[0][0];
    const double reno_ratio = peak[1][1] / peak[1][0];
    char buf[200];
    std::snprintf(buf, sizeof buf, "baseline %.0f -> %.0f (x%.2f), renovated %.0f -> %.0f (x%.3f)", peak[0][0],
                  peak[0][1], base_ratio, peak[1][0], peak[1][1], reno_ratio);
    return {base_ratio >= 4.0 && reno_ratio <= 1.1, buf};
}

Outcome registry_probes() {
    ScenarioConfig cfg = parse_scenario(scenario_path("default.json"));
    cfg.device_count = 280;
    cfg.duration_min = 30;
    RunOptions list_opts, map_opts;
    list_opts.seed = map_opts.seed = cfg.master_seed;
    list_opts.registry = RegistryStrategy::AppendOnly;
    map_opts.registry = RegistryStrategy::Pruned;
    const auto list = Simulation(cfg, list_opts).run();
    const auto map = Simulation(cfg, map_opts).run();
    const double ratio = static_cast<double>(list.registry_probes) / static_cast<double>(map.registry_probes);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%llu tasks, probes append-only %llu vs pruned %llu (x%.1f)",
                  static_cast<unsigned long long>(list.summary.tasks_generated),
                  static_cast<unsigned long long>(list.registry_probes),
                  static_cast<unsigned long long>(map.registry_probes), ratio);
    return {ratio >= 20.0, buf};
}

Outcome speedup_trend() {
    ScenarioConfig cfg = parse_scenario(scenario_path("default.json"));
    cfg.duration_min = 30;
    const auto rows = bench_sweep(cfg, SweepSpec::parse("devices=200:1000:200"), 10, [](const BenchRow& r) {
        std::printf("    devices=%-5g %-9s mean %.4f s  sd %.4f s  peak queue %.0f\n", r.value,
                    std::string(to_string(r.engine)).c_str(), r.mean_wall_s, r.sd_wall_s, r.mean_peak_queue);
        std::fflush(stdout);
    });
    bool ok = true;
    double prev = 0.0;
    std::string detail = "speedups";
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
        const double speedup = rows[i].mean_wall_s / rows[i + 1].mean_wall_s;
        ok &= rows[i + 1].mean_wall_s < rows[i].mean_wall_s;
        ok &= speedup >= prev;
        prev = speedup;
        char buf[48];
        std::snprintf(buf, sizeof buf, " %g:x%.1f", rows[i].value, speedup);
        detail += buf;
    }
    return {ok, detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"1 mobility equivalence (precomputed vs event-driven)", mobility_equivalence},
        {"2 load equivalence (eager vs lazy)", load_equivalence},
        {"3 determinism and cross-engine equality", determinism_and_equality},
        {"4 conservation", conservation},
        {"5 KS correctness and calibration", ks_correctness},
        {"6 validation campaign (>= 14/15 cells p > 0.05)", validation_campaign},
        {"7 queue scaling (30 vs 150 min)", queue_scaling},
        {"8 registry probe asymptotics", registry_probes},
        {"9 speedup trend (devices 200..1000)", speedup_trend},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %s  (%.1f s)\n      %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
