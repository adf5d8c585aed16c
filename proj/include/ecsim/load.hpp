#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecsim/kernel.hpp"
#include "ecsim/mobility.hpp"

namespace ecsim {

struct TaskTypeProfile {
    std::string name;
    double weight = 1.0;  // share of devices assigned this type
    double interarrival_mean_s = 0.0;
    double active_s = 0.0;
    double idle_s = 0.0;
    double upload_bytes = 0.0;
    double download_bytes = 0.0;
    double length_mi = 0.0;
    double vm_utilization_pct = 0.0;
    double cloud_probability = 0.0;

    bool operator==(const TaskTypeProfile&) const = default;
};

struct TaskProperties {
    TaskId id = 0;
    DeviceId device = 0;
    std::uint32_t profile = 0;
    SimTime arrival = 0.0;

    bool operator==(const TaskProperties&) const = default;
};

namespace load {

inline double sample_interarrival(const TaskTypeProfile& profile, double u) {
    return mobility::sample_dwell(profile.interarrival_mean_s, u);
}

/// Arrival times generated for one active period, and where the next starts.
struct ActivePeriod {
    std::vector<SimTime> arrivals;
    SimTime next_period_start = 0.0;
};

/// Poisson arrivals inside [period_start, period_start + active_s), clipped at
/// the horizon. The first arrival lies one inter-arrival draw past the period
/// start; the draw that overshoots the window is consumed and discarded.
template <UniformSource Src>
ActivePeriod generate_active_period(const TaskTypeProfile& profile, SimTime period_start,
                                    SimTime horizon, Src& load) {
    ActivePeriod out;
    SimTime t = period_start + sample_interarrival(profile, load.uniform());
    while (t - period_start < profile.active_s && t < horizon) {
        out.arrivals.push_back(t);
        t += sample_interarrival(profile, load.uniform());
    }
    out.next_period_start = period_start + profile.active_s + profile.idle_s;
    return out;
}

/// Eager strategy: every active period of the run, concatenated.
template <UniformSource Src>
std::vector<SimTime> generate_all(const TaskTypeProfile& profile, SimTime horizon, Src& load) {
    std::vector<SimTime> all;
    SimTime start = 0.0;
    while (start < horizon) {
        ActivePeriod period = generate_active_period(profile, start, horizon, load);
        all.insert(all.end(), period.arrivals.begin(), period.arrivals.end());
        start = period.next_period_start;
    }
    return all;
}

/// Index into `profiles` chosen by cumulative weight.
std::uint32_t pick_profile(const std::vector<TaskTypeProfile>& profiles, double u);

}  // namespace load

/// Lazy strategy driver: at each ActivePeriodStart it enqueues TaskArrival
/// events for that period only, plus the next ActivePeriodStart.
class LazyLoadGenerator {
public:
    LazyLoadGenerator(const std::vector<TaskTypeProfile>& profiles,
                      std::vector<std::uint32_t> profile_of, std::uint64_t master_seed,
                      SimTime horizon);

    /// Generates the period starting at `kernel.now()` for `device`.
    void schedule_period(DeviceId device, Kernel& kernel);

    /// First period of every device, at the current kernel time.
    void schedule_initial(Kernel& kernel);

    TaskId tasks_generated() const noexcept { return next_task_; }

private:
    const std::vector<TaskTypeProfile>& profiles_;
    std::vector<std::uint32_t> profile_of_;
    std::vector<Stream> streams_;
    SimTime horizon_;
    TaskId next_task_ = 0;
};

}  // namespace ecsim
