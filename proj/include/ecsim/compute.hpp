#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ecsim/load.hpp"

namespace ecsim {

enum class Tier : std::uint8_t { Edge, Cloud };

struct VmState {
    std::uint32_t id = 0;
    Tier tier = Tier::Edge;
    ApId ap = 0;  // edge VMs only
    double mips = 0.0;
    double utilization_pct = 0.0;
    std::uint32_t running = 0;
};

enum class TaskStatus : std::uint8_t { InFlight, Completed, FailedNetwork, FailedMobility, FailedVmCapacity };

std::string_view to_string(TaskStatus status);

constexpr bool is_terminal(TaskStatus s) noexcept { return s != TaskStatus::InFlight; }

struct VmRef {
    Tier tier = Tier::Edge;
    std::uint32_t index = 0;  // index into the tier's VM table
};

struct TaskRecord {
    TaskProperties properties;
    VmRef target;
    ApId origin_loc = 0;
    std::optional<SimTime> submitted_at;
    std::optional<SimTime> upload_done_at;
    std::optional<SimTime> exec_done_at;
    std::optional<SimTime> finished_at;
    TaskStatus status = TaskStatus::InFlight;
    bool admitted = false;

    TaskId id() const noexcept { return properties.id; }
};

enum class PolicyVariant : std::uint8_t { SingleTier, TwoTier, TwoTierWithOrchestrator };

std::string_view to_string(PolicyVariant v);
std::optional<PolicyVariant> policy_from_string(std::string_view s);

struct PlacementPolicy {
    PolicyVariant variant = PolicyVariant::SingleTier;
    double edge_utilization_threshold_pct = 80.0;  // orchestrator only

    bool operator==(const PlacementPolicy&) const = default;
};

struct EdgeConfig {
    std::uint32_t vms_per_ap = 2;
    double mips = 5000.0;
    bool operator==(const EdgeConfig&) const = default;
};

struct CloudConfig {
    std::uint32_t vm_count = 4;
    double mips = 20000.0;
    bool operator==(const CloudConfig&) const = default;
};

/// Edge VMs grouped by access point plus the cloud tier.
class ComputePool {
public:
    ComputePool(std::size_t ap_count, const EdgeConfig& edge, const CloudConfig& cloud);

    std::span<VmState> edge_at(ApId ap);
    std::span<const VmState> edge_at(ApId ap) const;
    std::span<VmState> cloud() { return cloud_; }
    std::span<const VmState> cloud() const { return cloud_; }

    VmState& vm(VmRef ref);
    const VmState& vm(VmRef ref) const;

    /// Sum of utilization over every VM in both tiers.
    double total_utilization() const;

private:
    std::size_t vms_per_ap_;
    std::vector<VmState> edge_;
    std::vector<VmState> cloud_;
};

namespace compute {

/// Least-utilized VM; ties go to the lowest index.
std::uint32_t least_utilized(std::span<const VmState> vms);

struct Placement {
    VmRef target;
    bool needs_wan = false;
};

/// Chooses the VM for a new task. `draw` is consulted only by TwoTier, which
/// sends the task to the cloud when `draw() < cloud_probability`.
template <typename Draw>
Placement select_target(const PlacementPolicy& policy, const TaskTypeProfile& profile,
                        ApId device_loc, const ComputePool& pool, Draw&& draw) {
    const auto edge = pool.edge_at(device_loc);
    const std::uint32_t best_edge = least_utilized(edge);
    const auto edge_index = static_cast<std::uint32_t>(device_loc * edge.size()) + best_edge;
    const Placement to_edge{{Tier::Edge, edge_index}, false};
    const Placement to_cloud{{Tier::Cloud, least_utilized(pool.cloud())}, true};
    switch (policy.variant) {
        case PolicyVariant::SingleTier:
            return to_edge;
        case PolicyVariant::TwoTier:
            return draw() < profile.cloud_probability ? to_cloud : to_edge;
        case PolicyVariant::TwoTierWithOrchestrator:
            return edge[best_edge].utilization_pct + profile.vm_utilization_pct >
                           policy.edge_utilization_threshold_pct
                       ? to_cloud
                       : to_edge;
    }
    return to_edge;
}

/// Admits the task iff the VM's utilization stays at or below 100 %.
bool try_allocate(VmState& vm, const TaskTypeProfile& profile);

/// Releases an admitted task's utilization share.
void release(VmState& vm, const TaskTypeProfile& profile);

inline double execution_time(const TaskTypeProfile& profile, const VmState& vm) {
    return profile.length_mi / vm.mips;
}

/// Edge results are delivered through the origin AP, so the device must
/// still be there. Cloud results follow the device and never fail this way.
inline bool delivery_blocked_by_mobility(const TaskRecord& record, ApId current_loc) {
    return record.target.tier == Tier::Edge && current_loc != record.origin_loc;
}

}  // namespace compute
}  // namespace ecsim
