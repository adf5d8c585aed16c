#include "ecsim/registry.hpp"

#include <algorithm>
#include <string>

namespace ecsim {

void TaskRegistry::add(TaskRecord record) {
    const TaskId id = record.id();
    if (strategy_ == RegistryStrategy::AppendOnly) {
        if (!ids_.insert(id).second) throw Error(ErrorCode::DuplicateId, "task " + std::to_string(id));
        list_.push_back(std::move(record));
    } else {
        if (!map_.emplace(id, std::move(record)).second)
            throw Error(ErrorCode::DuplicateId, "task " + std::to_string(id));
    }
    peak_ = std::max(peak_, size());
}

TaskRecord* TaskRegistry::lookup(TaskId id) {
    if (strategy_ == RegistryStrategy::AppendOnly) {
        for (auto& r : list_) {
            ++probes_;
            if (r.id() == id) return &r;
        }
        return nullptr;
    }
    ++probes_;
    auto it = map_.find(id);
    return it == map_.end() ? nullptr : &it->second;
}

void TaskRegistry::retire(TaskId id) {
    if (strategy_ == RegistryStrategy::AppendOnly) {
        // Tasks finish roughly in arrival order, so the record is usually
        // near the tail. Not counted as lookup probes.
        auto it = std::find_if(list_.rbegin(), list_.rend(), [id](const TaskRecord& r) { return r.id() == id; });
        if (it == list_.rend()) throw Error(ErrorCode::UnknownId, "task " + std::to_string(id));
        if (!is_terminal(it->status)) throw Error(ErrorCode::NotTerminal, "task " + std::to_string(id));
        return;  // kept forever
    }
    auto it = map_.find(id);
    if (it == map_.end()) throw Error(ErrorCode::UnknownId, "task " + std::to_string(id));
    if (!is_terminal(it->second.status)) throw Error(ErrorCode::NotTerminal, "task " + std::to_string(id));
    map_.erase(it);
}

std::size_t TaskRegistry::size() const noexcept {
    return strategy_ == RegistryStrategy::AppendOnly ? list_.size() : map_.size();
}

}  // namespace ecsim
