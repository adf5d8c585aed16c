#include "ecsim/simulation.hpp"

#include <algorithm>
#include <chrono>

namespace ecsim {

std::string_view to_string(Engine e) { return e == Engine::Baseline ? "baseline" : "renovated"; }

std::optional<Engine> engine_from_string(std::string_view s) {
    if (s == "baseline") return Engine::Baseline;
    if (s == "renovated") return Engine::Renovated;
    return std::nullopt;
}

std::vector<std::uint32_t> assign_profiles(const ScenarioConfig& cfg, std::uint64_t seed) {
    std::vector<std::uint32_t> out(cfg.device_count);
    for (DeviceId d = 0; d < cfg.device_count; ++d) {
        Stream s(seed, d, StreamPurpose::ProfileAssignment);
        out[d] = load::pick_profile(cfg.profiles, s.uniform());
    }
    return out;
}

struct Simulation::Impl {
    Impl(const ScenarioConfig& c, RunOptions o)
        : cfg(c),
          opts(std::move(o)),
          horizon(c.horizon_s()),
          pool(c.access_points.size(), c.edge, c.cloud),
          network(c.network),
          registry(opts.registry.value_or(opts.engine == Engine::Baseline ? RegistryStrategy::AppendOnly
                                                                          : RegistryStrategy::Pruned)) {}

    ScenarioConfig cfg;
    RunOptions opts;
    SimTime horizon;
    Kernel kernel;
    std::vector<std::uint32_t> profile_of;
    std::vector<Stream> placement;

    // Baseline
    std::optional<TrajectoryTable> trajectories;
    // Renovated
    std::optional<MobilityState> mobility;
    std::vector<MobilityStreams> mobility_streams;
    std::optional<LazyLoadGenerator> lazy;

    ComputePool pool;
    NetworkState network;
    TaskRegistry registry;
    MetricsCollector metrics;
    std::uint64_t in_flight = 0;
    std::uint64_t generated = 0;
    std::vector<TaskRecord> kept;
    std::vector<LocationRow> locations;
    const Simulation* owner = nullptr;
    bool ran = false;

    bool baseline() const noexcept { return opts.engine == Engine::Baseline; }

    // Precomputed trajectories run past the horizon; devices are frozen there
    // while in-flight tasks drain, matching the event-driven engine.
    SimTime lookup_time() const noexcept { return std::min(kernel.now(), horizon); }

    ApId location_of(DeviceId d) const {
        return baseline() ? trajectories->location_at(d, lookup_time()) : mobility->location_of(d);
    }

    std::uint32_t count_at(ApId ap) const {
        return baseline() ? trajectories->device_count_at(ap, lookup_time()) : mobility->device_count_at(ap);
    }

    const TaskTypeProfile& profile(const TaskRecord& r) const { return cfg.profiles[r.properties.profile]; }

    void setup();
    void handle(const Event& ev);
    void on_arrival(const Event& ev);
    void on_upload_done(const Event& ev);
    void on_exec_done(const Event& ev);
    void on_download_done(const Event& ev);
    void on_snapshot();
    TaskRecord& find(TaskId id);
    void finish(TaskRecord& r, TaskStatus status);
    void reconstruct_snapshots();
};

void Simulation::Impl::setup() {
    const std::uint32_t devices = cfg.device_count;
    profile_of = assign_profiles(cfg, opts.seed);
    placement.reserve(devices);
    for (DeviceId d = 0; d < devices; ++d) placement.emplace_back(opts.seed, d, StreamPurpose::Placement);

    if (baseline()) {
        std::vector<Trajectory> trajs;
        trajs.reserve(devices);
        for (DeviceId d = 0; d < devices; ++d) {
            auto s = MobilityStreams::for_device(opts.seed, d);
            trajs.push_back(precompute_trajectory(cfg.access_points, horizon, s.dwell, s.destination));
        }
        trajectories.emplace(cfg.access_points, std::move(trajs));

        TaskId next = 0;
        for (DeviceId d = 0; d < devices; ++d) {
            Stream s(opts.seed, d, StreamPurpose::Load);
            const std::uint32_t p = profile_of[d];
            for (SimTime at : load::generate_all(cfg.profiles[p], horizon, s))
                kernel.schedule(at, EventKind::TaskArrival, {.device = d, .task = next++, .profile = p});
        }
        return;
    }

    mobility_streams.reserve(devices);
    for (DeviceId d = 0; d < devices; ++d) mobility_streams.push_back(MobilityStreams::for_device(opts.seed, d));
    mobility.emplace(init_event_driven(
        devices, cfg.access_points, [this](DeviceId d) -> MobilityStreams& { return mobility_streams[d]; },
        kernel));
    lazy.emplace(cfg.profiles, profile_of, opts.seed, horizon);
    lazy->schedule_initial(kernel);
    if (opts.snapshots) {
        const double period = cfg.snapshot_period_s.value_or(60.0);
        if (period <= horizon) kernel.schedule(period, EventKind::LocationSnapshot);
    }
}

void Simulation::Impl::handle(const Event& ev) {
    switch (ev.kind) {
        case EventKind::DeviceMove: {
            auto& s = mobility_streams[ev.payload.device];
            apply_movement(*mobility, ev.payload.device, kernel, s.dwell, s.destination);
            break;
        }
        case EventKind::ActivePeriodStart: lazy->schedule_period(ev.payload.device, kernel); break;
        case EventKind::TaskArrival: on_arrival(ev); break;
        case EventKind::UploadDone: on_upload_done(ev); break;
        case EventKind::ExecDone: on_exec_done(ev); break;
        case EventKind::DownloadDone: on_download_done(ev); break;
        case EventKind::LocationSnapshot: on_snapshot(); break;
    }
    if (opts.observer) opts.observer(ev, *owner);
}

TaskRecord& Simulation::Impl::find(TaskId id) {
    TaskRecord* r = registry.lookup(id);
    if (r == nullptr) throw Error(ErrorCode::InconsistentState, "lifecycle event for unknown task " + std::to_string(id));
    return *r;
}

void Simulation::Impl::finish(TaskRecord& r, TaskStatus status) {
    r.status = status;
    r.finished_at = kernel.now();
    metrics.record(r);
    if (opts.keep_records) kept.push_back(r);
    --in_flight;
    registry.retire(r.id());  // r is dangling from here on under the pruned strategy
}

void Simulation::Impl::on_arrival(const Event& ev) {
    const DeviceId d = ev.payload.device;
    ++generated;
    ++in_flight;
    metrics.on_generated();

    TaskRecord rec;
    rec.properties = {ev.payload.task, d, ev.payload.profile, ev.time};
    rec.origin_loc = location_of(d);
    rec.submitted_at = ev.time;
    const TaskTypeProfile& p = profile(rec);
    const auto placement_choice = compute::select_target(cfg.policy, p, rec.origin_loc, pool,
                                                         [this, d] { return placement[d].uniform(); });
    rec.target = placement_choice.target;

    Transfer up = network.wlan_delay(cfg.access_points[rec.origin_loc], count_at(rec.origin_loc), p.upload_bytes);
    double delay = up.seconds;
    bool failed = !up.ok();
    if (!failed && placement_choice.needs_wan) {
        Transfer wan = network.wan_delay(p.upload_bytes);
        if (wan.ok()) {
            delay += wan.seconds;
            network.begin_wan_transfer();
        } else {
            failed = true;
        }
    }
    // A failed upload is registered already terminal and retired at once; no
    // VM or WAN state was touched.
    if (failed) rec.status = TaskStatus::FailedNetwork;
    registry.add(rec);
    if (failed) {
        finish(rec, TaskStatus::FailedNetwork);
        return;
    }
    kernel.schedule(ev.time + delay, EventKind::UploadDone, {.device = d, .task = rec.id()});
}

void Simulation::Impl::on_upload_done(const Event& ev) {
    TaskRecord& r = find(ev.payload.task);
    if (r.target.tier == Tier::Cloud) network.end_wan_transfer();
    r.upload_done_at = ev.time;
    VmState& vm = pool.vm(r.target);
    const TaskTypeProfile& p = profile(r);
    if (!compute::try_allocate(vm, p)) {
        finish(r, TaskStatus::FailedVmCapacity);
        return;
    }
    r.admitted = true;
    kernel.schedule(ev.time + compute::execution_time(p, vm), EventKind::ExecDone,
                    {.device = ev.payload.device, .task = r.id()});
}

void Simulation::Impl::on_exec_done(const Event& ev) {
    TaskRecord& r = find(ev.payload.task);
    const TaskTypeProfile& p = profile(r);
    compute::release(pool.vm(r.target), p);
    r.exec_done_at = ev.time;
    const ApId current = location_of(r.properties.device);
    if (compute::delivery_blocked_by_mobility(r, current)) {
        finish(r, TaskStatus::FailedMobility);
        return;
    }
    double delay = 0.0;
    if (r.target.tier == Tier::Cloud) {
        Transfer wan = network.wan_delay(p.download_bytes);
        if (!wan.ok()) {
            finish(r, TaskStatus::FailedNetwork);
            return;
        }
        delay += wan.seconds;
    }
    // Edge results go out through the origin AP; cloud results through
    // wherever the device is now. Both equal `current` at this point.
    Transfer down = network.wlan_delay(cfg.access_points[current], count_at(current), p.download_bytes);
    if (!down.ok()) {
        finish(r, TaskStatus::FailedNetwork);
        return;
    }
    delay += down.seconds;
    if (r.target.tier == Tier::Cloud) network.begin_wan_transfer();
    kernel.schedule(ev.time + delay, EventKind::DownloadDone, {.device = ev.payload.device, .task = r.id()});
}

void Simulation::Impl::on_download_done(const Event& ev) {
    TaskRecord& r = find(ev.payload.task);
    if (r.target.tier == Tier::Cloud) network.end_wan_transfer();
    finish(r, TaskStatus::Completed);
}

void Simulation::Impl::on_snapshot() {
    const SimTime now = kernel.now();
    for (ApId ap = 0; ap < cfg.access_points.size(); ++ap)
        locations.push_back({now, ap, mobility->device_count_at(ap)});
    const SimTime next = now + cfg.snapshot_period_s.value_or(60.0);
    if (next <= horizon) kernel.schedule(next, EventKind::LocationSnapshot);
}

void Simulation::Impl::reconstruct_snapshots() {
    const double period = cfg.snapshot_period_s.value_or(60.0);
    for (SimTime t = period; t <= horizon; t += period)
        for (ApId ap = 0; ap < cfg.access_points.size(); ++ap)
            locations.push_back({t, ap, trajectories->device_count_at(ap, t)});
}

Simulation::Simulation(const ScenarioConfig& cfg, RunOptions options)
    : impl_(std::make_unique<Impl>(cfg, std::move(options))) {
    validate(cfg);
}

Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

RunResult Simulation::run() {
    Impl& s = *impl_;
    if (s.ran) throw Error(ErrorCode::InvalidArgument, "a Simulation can only run once");
    s.ran = true;
    s.owner = this;

    const auto start = std::chrono::steady_clock::now();
    s.setup();
    RunStats stats = s.kernel.run(s.horizon, [&s](const Event& ev, Kernel&) { s.handle(ev); });
    stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (s.in_flight != 0)
        throw Error(ErrorCode::InconsistentState, std::to_string(s.in_flight) + " tasks still in flight after drain");
    if (s.baseline() && s.opts.snapshots) s.reconstruct_snapshots();

    RunResult out;
    out.summary = s.metrics.summary(stats);
    out.stats = stats;
    out.registry_probes = s.registry.probes();
    out.registry_peak = s.registry.peak_size();
    out.locations = std::move(s.locations);
    out.records = std::move(s.kept);
    return out;
}

Engine Simulation::engine() const noexcept { return impl_->opts.engine; }
const Kernel& Simulation::kernel() const noexcept { return impl_->kernel; }
ApId Simulation::location_of(DeviceId device) const { return impl_->location_of(device); }
std::uint32_t Simulation::device_count_at(ApId ap) const { return impl_->count_at(ap); }
const MobilityState* Simulation::mobility_state() const noexcept {
    return impl_->mobility ? &*impl_->mobility : nullptr;
}
const TrajectoryTable* Simulation::trajectories() const noexcept {
    return impl_->trajectories ? &*impl_->trajectories : nullptr;
}
const ComputePool& Simulation::compute() const noexcept { return impl_->pool; }
const NetworkState& Simulation::network() const noexcept { return impl_->network; }
const TaskRegistry& Simulation::registry() const noexcept { return impl_->registry; }
std::uint64_t Simulation::in_flight() const noexcept { return impl_->in_flight; }
std::uint64_t Simulation::tasks_generated() const noexcept { return impl_->generated; }
const std::vector<std::uint32_t>& Simulation::profile_of() const noexcept { return impl_->profile_of; }

}  // namespace ecsim
