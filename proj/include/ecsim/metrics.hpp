#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "ecsim/compute.hpp"
#include "ecsim/kernel.hpp"

namespace ecsim {

struct MetricsSummary {
    std::uint64_t tasks_generated = 0;
    std::uint64_t completed = 0;
    std::uint64_t failed_network = 0;
    std::uint64_t failed_mobility = 0;
    std::uint64_t failed_vm = 0;
    double failed_rel_pct = 0.0;
    std::optional<double> avg_service_time_s;  // absent iff completed == 0
    double wall_time_s = 0.0;
    std::uint64_t peak_queue_size = 0;

    std::uint64_t failed() const noexcept { return failed_network + failed_mobility + failed_vm; }
};

/// Running aggregation over terminal task records.
class MetricsCollector {
public:
    /// Counts a task at its arrival, independently of how it ends.
    void on_generated() noexcept { ++generated_; }

    /// Folds in a terminal record; throws NotTerminal for in-flight ones.
    void record(const TaskRecord& record);

    MetricsSummary summary(const RunStats& stats) const;

private:
    std::uint64_t generated_ = 0;
    std::uint64_t completed_ = 0;
    std::uint64_t failed_network_ = 0;
    std::uint64_t failed_mobility_ = 0;
    std::uint64_t failed_vm_ = 0;
    double service_time_sum_ = 0.0;
};

/// Recomputes a summary from raw terminal records.
MetricsSummary summarize(std::span<const TaskRecord> records, const RunStats& stats);

namespace csv {

/// Shortest round-trip decimal form, '.' separator, locale independent.
std::string format_double(double v);

inline constexpr const char* kMetricsHeader =
    "tasks_generated,completed,failed_network,failed_mobility,failed_vm,failed_rel_pct,"
    "avg_service_time_s,wall_time_s,peak_queue_size";

/// Columns of kMetricsHeader. An absent average prints as an empty field.
std::string metrics_fields(const MetricsSummary& m);

/// The simulation-determined fields only (everything except wall time).
std::string metrics_fields_deterministic(const MetricsSummary& m);

inline constexpr const char* kRunStatsHeader =
    "engine,seed,events_dispatched,peak_queue_size,wall_time_seconds";

}  // namespace csv
}  // namespace ecsim
