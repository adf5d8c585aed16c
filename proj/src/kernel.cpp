#include "ecsim/kernel.hpp"

#include <algorithm>

namespace ecsim {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SchedulingInPast: return "SchedulingInPast";
        case ErrorCode::DegenerateTopology: return "DegenerateTopology";
        case ErrorCode::InconsistentState: return "InconsistentState";
        case ErrorCode::UnknownLocation: return "UnknownLocation";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownId: return "UnknownId";
        case ErrorCode::NotTerminal: return "NotTerminal";
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::Io: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::DeviceMove: return "DeviceMove";
        case EventKind::ActivePeriodStart: return "ActivePeriodStart";
        case EventKind::TaskArrival: return "TaskArrival";
        case EventKind::UploadDone: return "UploadDone";
        case EventKind::ExecDone: return "ExecDone";
        case EventKind::DownloadDone: return "DownloadDone";
        case EventKind::LocationSnapshot: return "LocationSnapshot";
    }
    return "Unknown";
}

namespace {

// std heap algorithms build a max-heap, so "greater" puts the earliest on top.
struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

}  // namespace

std::uint64_t Kernel::schedule(SimTime time, EventKind kind, EventPayload payload) {
    if (time < now_)
        throw Error(ErrorCode::SchedulingInPast,
                    std::string(to_string(kind)) + " at " + std::to_string(time) +
                        " is before now " + std::to_string(now_));
    const std::uint64_t seq = next_seq_++;
    heap_.push_back(Event{time, seq, kind, payload});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    peak_ = std::max<std::uint64_t>(peak_, heap_.size());
    if (is_lifecycle(kind)) ++pending_lifecycle_;
    return seq;
}

std::optional<Event> Kernel::pop_next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Event ev = heap_.back();
    heap_.pop_back();
    now_ = ev.time;
    if (is_lifecycle(ev.kind)) --pending_lifecycle_;
    return ev;
}

}  // namespace ecsim
