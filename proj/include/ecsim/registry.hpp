#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ecsim/compute.hpp"

namespace ecsim {

enum class RegistryStrategy : std::uint8_t {
    AppendOnly,  // linear id search, records never removed
    Pruned,      // keyed lookup, terminal records removed on retire
};

/// In-flight task lookup. Both strategies return the same records for
/// in-flight ids; they differ only in cost, which `probes()` measures as the
/// number of stored elements inspected across all lookups.
class TaskRegistry {
public:
    explicit TaskRegistry(RegistryStrategy strategy) : strategy_(strategy) {}

    /// Throws DuplicateId if the id is already present.
    void add(TaskRecord record);

    /// nullptr when absent. Retired records are absent only under Pruned.
    TaskRecord* lookup(TaskId id);

    /// Throws UnknownId / NotTerminal.
    void retire(TaskId id);

    std::size_t size() const noexcept;
    std::size_t peak_size() const noexcept { return peak_; }
    std::uint64_t probes() const noexcept { return probes_; }
    RegistryStrategy strategy() const noexcept { return strategy_; }

private:
    RegistryStrategy strategy_;
    std::vector<TaskRecord> list_;
    std::unordered_set<TaskId> ids_;  // duplicate detection only
    std::unordered_map<TaskId, TaskRecord> map_;
    std::size_t peak_ = 0;
    std::uint64_t probes_ = 0;
};

}  // namespace ecsim
