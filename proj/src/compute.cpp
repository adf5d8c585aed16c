#include "ecsim/compute.hpp"

#include <string>

namespace ecsim {

std::string_view to_string(TaskStatus status) {
    switch (status) {
        case TaskStatus::InFlight: return "in_flight";
        case TaskStatus::Completed: return "completed";
        case TaskStatus::FailedNetwork: return "failed_network";
        case TaskStatus::FailedMobility: return "failed_mobility";
        case TaskStatus::FailedVmCapacity: return "failed_vm_capacity";
    }
    return "unknown";
}

std::string_view to_string(PolicyVariant v) {
    switch (v) {
        case PolicyVariant::SingleTier: return "single_tier";
        case PolicyVariant::TwoTier: return "two_tier";
        case PolicyVariant::TwoTierWithOrchestrator: return "two_tier_with_orchestrator";
    }
    return "unknown";
}

std::optional<PolicyVariant> policy_from_string(std::string_view s) {
    for (auto v : {PolicyVariant::SingleTier, PolicyVariant::TwoTier, PolicyVariant::TwoTierWithOrchestrator})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

ComputePool::ComputePool(std::size_t ap_count, const EdgeConfig& edge, const CloudConfig& cloud)
    : vms_per_ap_(edge.vms_per_ap) {
    if (edge.vms_per_ap == 0 || cloud.vm_count == 0)
        throw Error(ErrorCode::InvalidArgument, "every tier needs at least one VM");
    edge_.reserve(ap_count * vms_per_ap_);
    for (std::size_t ap = 0; ap < ap_count; ++ap)
        for (std::uint32_t i = 0; i < edge.vms_per_ap; ++i)
            edge_.push_back(VmState{static_cast<std::uint32_t>(edge_.size()), Tier::Edge,
                                    static_cast<ApId>(ap), edge.mips, 0.0, 0});
    for (std::uint32_t i = 0; i < cloud.vm_count; ++i)
        cloud_.push_back(VmState{i, Tier::Cloud, 0, cloud.mips, 0.0, 0});
}

std::span<VmState> ComputePool::edge_at(ApId ap) {
    return std::span<VmState>(edge_).subspan(ap * vms_per_ap_, vms_per_ap_);
}

std::span<const VmState> ComputePool::edge_at(ApId ap) const {
    return std::span<const VmState>(edge_).subspan(ap * vms_per_ap_, vms_per_ap_);
}

VmState& ComputePool::vm(VmRef ref) { return ref.tier == Tier::Edge ? edge_.at(ref.index) : cloud_.at(ref.index); }

const VmState& ComputePool::vm(VmRef ref) const {
    return ref.tier == Tier::Edge ? edge_.at(ref.index) : cloud_.at(ref.index);
}

double ComputePool::total_utilization() const {
    double sum = 0.0;
    for (const auto& vm : edge_) sum += vm.utilization_pct;
    for (const auto& vm : cloud_) sum += vm.utilization_pct;
    return sum;
}

namespace compute {

std::uint32_t least_utilized(std::span<const VmState> vms) {
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < vms.size(); ++i)
        if (vms[i].utilization_pct < vms[best].utilization_pct) best = i;
    return best;
}

bool try_allocate(VmState& vm, const TaskTypeProfile& profile) {
    if (vm.utilization_pct + profile.vm_utilization_pct > 100.0) return false;
    vm.utilization_pct += profile.vm_utilization_pct;
    ++vm.running;
    return true;
}

void release(VmState& vm, const TaskTypeProfile& profile) {
    if (vm.running == 0) throw Error(ErrorCode::InconsistentState, "release on idle VM " + std::to_string(vm.id));
    // Snap to exactly zero once idle so rounding never accumulates.
    vm.utilization_pct = --vm.running == 0 ? 0.0 : vm.utilization_pct - profile.vm_utilization_pct;
}

}  // namespace compute
}  // namespace ecsim
