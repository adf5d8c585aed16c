#include "ecsim/mobility.hpp"

#include <string>

namespace ecsim {

namespace mobility {

ApId pick_destination(ApId current, std::size_t location_count, double u) {
    if (location_count < 2)
        throw Error(ErrorCode::DegenerateTopology, "need at least two access points to move");
    const std::size_t others = location_count - 1;
    auto k = static_cast<std::size_t>(u * static_cast<double>(others));
    if (k >= others) k = others - 1;
    return static_cast<ApId>(k < current ? k : k + 1);
}

}  // namespace mobility

void Trajectory::add(SimTime at, ApId location) { points_.insert_or_assign(at, location); }

ApId Trajectory::location_at(SimTime t) const {
    auto it = points_.upper_bound(t);
    if (it == points_.begin())
        throw Error(ErrorCode::InvalidArgument, "trajectory has no point at or before t");
    return std::prev(it)->second;
}

TrajectoryTable::TrajectoryTable(std::vector<AccessPoint> aps, std::vector<Trajectory> trajectories)
    : aps_(std::move(aps)), trajectories_(std::move(trajectories)) {}

std::uint32_t TrajectoryTable::device_count_at(ApId loc, SimTime t) const {
    if (loc >= aps_.size())
        throw Error(ErrorCode::UnknownLocation, "access point " + std::to_string(loc));
    std::uint32_t n = 0;
    for (const auto& traj : trajectories_)
        if (traj.location_at(t) == loc) ++n;
    return n;
}

MobilityState::MobilityState(std::vector<AccessPoint> aps, std::size_t devices)
    : aps_(std::move(aps)),
      loc_of_(devices, kUnplaced),
      count_at_(aps_.size(), 0),
      next_move_at_(devices, 0.0) {}

void MobilityState::place(DeviceId device, ApId loc, SimTime next_move_at) {
    if (loc >= aps_.size())
        throw Error(ErrorCode::UnknownLocation, "access point " + std::to_string(loc));
    if (loc_of_.at(device) != kUnplaced)
        throw Error(ErrorCode::InconsistentState, "device " + std::to_string(device) + " placed twice");
    loc_of_[device] = loc;
    ++count_at_[loc];
    next_move_at_[device] = next_move_at;
}

void MobilityState::relocate(DeviceId device, ApId to, SimTime next_move_at) {
    if (to >= aps_.size())
        throw Error(ErrorCode::UnknownLocation, "access point " + std::to_string(to));
    const ApId from = loc_of_.at(device);
    if (from == kUnplaced || count_at_[from] == 0)
        throw Error(ErrorCode::InconsistentState,
                    "device count underflow at access point " + std::to_string(from));
    --count_at_[from];
    ++count_at_[to];
    loc_of_[device] = to;
    next_move_at_[device] = next_move_at;
}

std::uint32_t MobilityState::device_count_at(ApId loc) const {
    if (loc >= count_at_.size())
        throw Error(ErrorCode::UnknownLocation, "access point " + std::to_string(loc));
    return count_at_[loc];
}

}  // namespace ecsim
