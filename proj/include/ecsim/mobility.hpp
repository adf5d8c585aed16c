#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ecsim/kernel.hpp"
#include "ecsim/rng.hpp"

namespace ecsim {

struct AccessPoint {
    ApId id = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    double attractiveness_s = 0.0;  // mean dwell time
    double wlan_bandwidth_mbps = 0.0;

    bool operator==(const AccessPoint&) const = default;
};

/// Anything that hands out uniform variates in [0, 1).
template <typename S>
concept UniformSource = requires(S s) {
    { s.uniform() } -> std::convertible_to<double>;
};

/// Per-device mobility substreams.
struct MobilityStreams {
    Stream dwell;
    Stream destination;

    static MobilityStreams for_device(std::uint64_t master_seed, DeviceId device) {
        return {Stream(master_seed, device, StreamPurpose::MobilityDwell),
                Stream(master_seed, device, StreamPurpose::MobilityDestination)};
    }
};

namespace mobility {

/// Exponential dwell by inverse transform: -mean * ln(1 - u).
inline double sample_dwell(double attractiveness_s, double u) {
    return -attractiveness_s * std::log1p(-u);
}

/// Uniform choice among the `location_count - 1` locations other than
/// `current`. Throws DegenerateTopology when fewer than two locations exist.
ApId pick_destination(ApId current, std::size_t location_count, double u);

/// Uniform initial placement over all locations.
inline ApId pick_initial(std::size_t location_count, double u) {
    auto idx = static_cast<ApId>(u * static_cast<double>(location_count));
    return idx < location_count ? idx : static_cast<ApId>(location_count - 1);
}

}  // namespace mobility

/// Precomputed movement history of one device: movement time -> location.
class Trajectory {
public:
    Trajectory() = default;

    void add(SimTime at, ApId location);

    /// Location at the greatest key <= t.
    ApId location_at(SimTime t) const;

    std::size_t movement_count() const noexcept {
        return points_.empty() ? 0 : points_.size() - 1;
    }
    const std::map<SimTime, ApId>& points() const noexcept { return points_; }

private:
    std::map<SimTime, ApId> points_;
};

/// Generates a device's whole trajectory up front: placement at t = 0, then
/// dwell and hop until a movement time exceeds `horizon`.
template <UniformSource Dwell, UniformSource Dest>
Trajectory precompute_trajectory(std::span<const AccessPoint> aps, SimTime horizon, Dwell& dwell,
                                 Dest& destination) {
    if (aps.size() < 2) throw Error(ErrorCode::DegenerateTopology, "need at least two access points");
    Trajectory traj;
    SimTime t = 0.0;
    ApId loc = mobility::pick_initial(aps.size(), destination.uniform());
    traj.add(t, loc);
    do {
        t += mobility::sample_dwell(aps[loc].attractiveness_s, dwell.uniform());
        loc = mobility::pick_destination(loc, aps.size(), destination.uniform());
        traj.add(t, loc);
    } while (t <= horizon);
    return traj;
}

/// Baseline location service: one trajectory tree per device, searched on
/// every query.
class TrajectoryTable {
public:
    TrajectoryTable(std::vector<AccessPoint> aps, std::vector<Trajectory> trajectories);

    ApId location_at(DeviceId device, SimTime t) const { return trajectories_[device].location_at(t); }

    /// Counts devices at `loc` by looking up every device's trajectory.
    std::uint32_t device_count_at(ApId loc, SimTime t) const;

    std::size_t device_count() const noexcept { return trajectories_.size(); }
    const Trajectory& trajectory(DeviceId device) const { return trajectories_.at(device); }
    const std::vector<AccessPoint>& access_points() const noexcept { return aps_; }

private:
    std::vector<AccessPoint> aps_;
    std::vector<Trajectory> trajectories_;
};

/// Event-driven mobility: current location per device and the device count
/// per access point, both updated only when a DeviceMove event fires.
class MobilityState {
public:
    MobilityState(std::vector<AccessPoint> aps, std::size_t devices);

    /// Initial placement; the device must not be placed yet.
    void place(DeviceId device, ApId loc, SimTime next_move_at);

    /// Moves a placed device, keeping the per-location counters consistent.
    /// Throws InconsistentState when the old location's counter would underflow.
    void relocate(DeviceId device, ApId to, SimTime next_move_at);

    ApId location_of(DeviceId device) const { return loc_of_[device]; }
    SimTime next_move_at(DeviceId device) const { return next_move_at_[device]; }

    /// O(1); throws UnknownLocation for an id outside 0..L-1.
    std::uint32_t device_count_at(ApId loc) const;

    std::size_t device_count() const noexcept { return loc_of_.size(); }
    std::size_t location_count() const noexcept { return aps_.size(); }
    const std::vector<AccessPoint>& access_points() const noexcept { return aps_; }
    std::span<const std::uint32_t> counts() const noexcept { return count_at_; }
    std::span<const ApId> locations() const noexcept { return loc_of_; }

    static constexpr ApId kUnplaced = static_cast<ApId>(-1);

private:
    std::vector<AccessPoint> aps_;
    std::vector<ApId> loc_of_;
    std::vector<std::uint32_t> count_at_;
    std::vector<SimTime> next_move_at_;
};

/// Places every device uniformly, draws its first dwell and schedules one
/// DeviceMove per device. `streams_for(d)` returns the device's streams.
template <typename StreamsFor>
MobilityState init_event_driven(std::size_t devices, std::vector<AccessPoint> aps,
                                StreamsFor&& streams_for, Kernel& kernel) {
    if (devices < 1) throw Error(ErrorCode::InvalidArgument, "device count must be >= 1");
    if (aps.size() < 2) throw Error(ErrorCode::DegenerateTopology, "need at least two access points");
    MobilityState state(std::move(aps), devices);
    const auto& table = state.access_points();
    for (DeviceId d = 0; d < devices; ++d) {
        auto&& s = streams_for(d);
        const ApId loc = mobility::pick_initial(table.size(), s.destination.uniform());
        const SimTime first =
            kernel.now() + mobility::sample_dwell(table[loc].attractiveness_s, s.dwell.uniform());
        state.place(d, loc, first);
        kernel.schedule(first, EventKind::DeviceMove, {.device = d});
    }
    return state;
}

/// Handles one DeviceMove: pick a destination, update the counters, draw the
/// dwell at the new location and schedule the next move.
template <UniformSource Dwell, UniformSource Dest>
ApId apply_movement(MobilityState& state, DeviceId device, Kernel& kernel, Dwell& dwell,
                    Dest& destination) {
    const SimTime now = kernel.now();
    if (state.next_move_at(device) != now)
        throw Error(ErrorCode::InconsistentState, "DeviceMove dispatched at the wrong time");
    const auto& aps = state.access_points();
    const ApId to = mobility::pick_destination(state.location_of(device), aps.size(), destination.uniform());
    const SimTime next = now + mobility::sample_dwell(aps[to].attractiveness_s, dwell.uniform());
    state.relocate(device, to, next);
    kernel.schedule(next, EventKind::DeviceMove, {.device = device});
    return to;
}

}  // namespace ecsim
