#include "ecsim/load.hpp"

namespace ecsim {

namespace load {

std::uint32_t pick_profile(const std::vector<TaskTypeProfile>& profiles, double u) {
    if (profiles.empty()) throw Error(ErrorCode::InvalidArgument, "no task profiles");
    double cumulative = 0.0;
    for (std::uint32_t i = 0; i < profiles.size(); ++i) {
        cumulative += profiles[i].weight;
        if (u < cumulative) return i;
    }
    // Weights sum to 1 only within rounding.
    return static_cast<std::uint32_t>(profiles.size() - 1);
}

}  // namespace load

LazyLoadGenerator::LazyLoadGenerator(const std::vector<TaskTypeProfile>& profiles,
                                     std::vector<std::uint32_t> profile_of,
                                     std::uint64_t master_seed, SimTime horizon)
    : profiles_(profiles), profile_of_(std::move(profile_of)), horizon_(horizon) {
    streams_.reserve(profile_of_.size());
    for (DeviceId d = 0; d < profile_of_.size(); ++d)
        streams_.emplace_back(master_seed, d, StreamPurpose::Load);
}

void LazyLoadGenerator::schedule_period(DeviceId device, Kernel& kernel) {
    const std::uint32_t p = profile_of_[device];
    const SimTime start = kernel.now();
    load::ActivePeriod period =
        load::generate_active_period(profiles_[p], start, horizon_, streams_[device]);
    for (SimTime at : period.arrivals)
        kernel.schedule(at, EventKind::TaskArrival, {.device = device, .task = next_task_++, .profile = p});
    if (period.next_period_start < horizon_)
        kernel.schedule(period.next_period_start, EventKind::ActivePeriodStart, {.device = device});
}

void LazyLoadGenerator::schedule_initial(Kernel& kernel) {
    for (DeviceId d = 0; d < profile_of_.size(); ++d) schedule_period(d, kernel);
}

}  // namespace ecsim
