#include "ecsim/metrics.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace ecsim {

void MetricsCollector::record(const TaskRecord& r) {
    switch (r.status) {
        case TaskStatus::Completed:
            ++completed_;
            service_time_sum_ += *r.finished_at - *r.submitted_at;
            break;
        case TaskStatus::FailedNetwork: ++failed_network_; break;
        case TaskStatus::FailedMobility: ++failed_mobility_; break;
        case TaskStatus::FailedVmCapacity: ++failed_vm_; break;
        case TaskStatus::InFlight:
            throw Error(ErrorCode::NotTerminal, "task " + std::to_string(r.id()) + " is still in flight");
    }
}

MetricsSummary MetricsCollector::summary(const RunStats& stats) const {
    MetricsSummary m;
    m.completed = completed_;
    m.failed_network = failed_network_;
    m.failed_mobility = failed_mobility_;
    m.failed_vm = failed_vm_;
    m.tasks_generated = generated_;
    m.failed_rel_pct =
        m.tasks_generated == 0 ? 0.0 : 100.0 * static_cast<double>(m.failed()) / static_cast<double>(m.tasks_generated);
    if (completed_ > 0) m.avg_service_time_s = service_time_sum_ / static_cast<double>(completed_);
    m.wall_time_s = stats.wall_time_s;
    m.peak_queue_size = stats.peak_queue_size;
    return m;
}

MetricsSummary summarize(std::span<const TaskRecord> records, const RunStats& stats) {
    MetricsCollector c;
    for (const auto& r : records) {
        c.on_generated();
        c.record(r);
    }
    return c.summary(stats);
}

namespace csv {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    return std::string(buf.data(), end);
}

std::string metrics_fields_deterministic(const MetricsSummary& m) {
    std::string s;
    s += std::to_string(m.tasks_generated) + ',' + std::to_string(m.completed) + ',' +
         std::to_string(m.failed_network) + ',' + std::to_string(m.failed_mobility) + ',' +
         std::to_string(m.failed_vm) + ',' + format_double(m.failed_rel_pct) + ',';
    if (m.avg_service_time_s) s += format_double(*m.avg_service_time_s);
    s += ',' + std::to_string(m.peak_queue_size);
    return s;
}

std::string metrics_fields(const MetricsSummary& m) {
    std::string s;
    s += std::to_string(m.tasks_generated) + ',' + std::to_string(m.completed) + ',' +
         std::to_string(m.failed_network) + ',' + std::to_string(m.failed_mobility) + ',' +
         std::to_string(m.failed_vm) + ',' + format_double(m.failed_rel_pct) + ',';
    if (m.avg_service_time_s) s += format_double(*m.avg_service_time_s);
    s += ',' + format_double(m.wall_time_s) + ',' + std::to_string(m.peak_queue_size);
    return s;
}

}  // namespace csv
}  // namespace ecsim
