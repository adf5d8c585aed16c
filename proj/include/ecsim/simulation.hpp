#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ecsim/kernel.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/registry.hpp"
#include "ecsim/scenario.hpp"

namespace ecsim {

/// Baseline: precomputed trajectories, all tasks generated before t = 0,
/// append-only task list. Renovated: movement and active-period events,
/// per-location counters, pruned registry.
enum class Engine : std::uint8_t { Baseline, Renovated };

std::string_view to_string(Engine e);
std::optional<Engine> engine_from_string(std::string_view s);

struct LocationRow {
    SimTime time = 0.0;
    ApId ap = 0;
    std::uint32_t device_count = 0;

    bool operator==(const LocationRow&) const = default;
};

class Simulation;

struct RunOptions {
    Engine engine = Engine::Renovated;
    std::uint64_t seed = 1;
    bool snapshots = false;
    // Defaults to the engine's own strategy.
    std::optional<RegistryStrategy> registry;
    bool keep_records = false;
    // Called after every dispatched event.
    std::function<void(const Event&, const Simulation&)> observer;
};

struct RunResult {
    MetricsSummary summary;
    RunStats stats;
    std::uint64_t registry_probes = 0;
    std::size_t registry_peak = 0;
    std::vector<LocationRow> locations;
    std::vector<TaskRecord> records;  // terminal records, when keep_records
};

/// One simulation run. Not copyable; may be moved to another thread before
/// run() is called.
class Simulation {
public:
    Simulation(const ScenarioConfig& cfg, RunOptions options);
    ~Simulation();
    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;

    /// Builds the model, dispatches to completion and returns the results.
    /// May be called once.
    RunResult run();

    Engine engine() const noexcept;
    const Kernel& kernel() const noexcept;

    /// Location and per-AP device count as the engine sees them now.
    ApId location_of(DeviceId device) const;
    std::uint32_t device_count_at(ApId ap) const;

    const MobilityState* mobility_state() const noexcept;   // renovated only
    const TrajectoryTable* trajectories() const noexcept;   // baseline only
    const ComputePool& compute() const noexcept;
    const NetworkState& network() const noexcept;
    const TaskRegistry& registry() const noexcept;
    std::uint64_t in_flight() const noexcept;
    std::uint64_t tasks_generated() const noexcept;
    const std::vector<std::uint32_t>& profile_of() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

inline RunResult run_scenario(const ScenarioConfig& cfg, Engine engine, std::uint64_t seed,
                              bool snapshots = false) {
    RunOptions opts;
    opts.engine = engine;
    opts.seed = seed;
    opts.snapshots = snapshots;
    return Simulation(cfg, std::move(opts)).run();
}

/// Per-device task type, drawn from each device's assignment substream.
std::vector<std::uint32_t> assign_profiles(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace ecsim
