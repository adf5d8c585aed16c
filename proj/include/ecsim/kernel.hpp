#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecsim/error.hpp"

namespace ecsim {

/// Simulated time in seconds.
using SimTime = double;

using DeviceId = std::uint32_t;
using ApId = std::uint32_t;
using TaskId = std::uint64_t;

enum class EventKind : std::uint8_t {
    DeviceMove,
    ActivePeriodStart,
    TaskArrival,
    UploadDone,
    ExecDone,
    DownloadDone,
    LocationSnapshot,
};

std::string_view to_string(EventKind kind);

/// Lifecycle kinds belong to tasks already in flight and keep draining past
/// the horizon. Everything else stops at the horizon.
constexpr bool is_lifecycle(EventKind kind) noexcept {
    return kind == EventKind::UploadDone || kind == EventKind::ExecDone ||
           kind == EventKind::DownloadDone;
}

struct EventPayload {
    DeviceId device = 0;
    TaskId task = 0;
    std::uint32_t profile = 0;  // TaskArrival only
};

struct Event {
    SimTime time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::DeviceMove;
    EventPayload payload;
};

struct RunStats {
    std::uint64_t events_dispatched = 0;
    std::uint64_t peak_queue_size = 0;
    double wall_time_s = 0.0;
};

/// Future event queue plus the simulation clock.
///
/// Pop order is (time, seq) ascending, so events scheduled for the same
/// instant dispatch in the order they were scheduled.
class Kernel {
public:
    Kernel() = default;

    /// Schedules an event at absolute `time`; throws SchedulingInPast if
    /// `time < now()`. Returns the sequence number assigned to it.
    std::uint64_t schedule(SimTime time, EventKind kind, EventPayload payload = {});

    /// Removes the earliest event and advances the clock to its time.
    std::optional<Event> pop_next();

    const Event* peek() const { return heap_.empty() ? nullptr : &heap_.front(); }

    /// Dispatches events to `handler(const Event&, Kernel&)` until the queue
    /// is empty, or until every remaining event lies past `horizon` and no
    /// task lifecycle event is pending. Non-lifecycle events past the horizon
    /// are discarded without dispatch.
    template <typename Handler>
    RunStats run(SimTime horizon, Handler&& handler);

    SimTime now() const noexcept { return now_; }
    std::size_t size() const noexcept { return heap_.size(); }
    bool empty() const noexcept { return heap_.empty(); }

    std::uint64_t scheduled_count() const noexcept { return next_seq_; }
    std::uint64_t dispatched_count() const noexcept { return dispatched_; }
    std::uint64_t discarded_count() const noexcept { return discarded_; }
    std::uint64_t peak_size() const noexcept { return peak_; }
    std::uint64_t pending_lifecycle() const noexcept { return pending_lifecycle_; }

private:
    std::vector<Event> heap_;
    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t dispatched_ = 0;
    std::uint64_t discarded_ = 0;
    std::uint64_t peak_ = 0;
    std::uint64_t pending_lifecycle_ = 0;
};

template <typename Handler>
RunStats Kernel::run(SimTime horizon, Handler&& handler) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t dispatched_before = dispatched_;
    while (!heap_.empty()) {
        const Event& top = heap_.front();
        if (top.time > horizon && pending_lifecycle_ == 0) break;
        Event ev = *pop_next();
        if (ev.time > horizon && !is_lifecycle(ev.kind)) {
            ++discarded_;
            continue;
        }
        ++dispatched_;
        handler(static_cast<const Event&>(ev), *this);
    }
    RunStats stats;
    stats.events_dispatched = dispatched_ - dispatched_before;
    stats.peak_queue_size = peak_;
    stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

}  // namespace ecsim
