#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecsim/simulation.hpp"
#include "ecsim/stats.hpp"

namespace ecsim {

/// Seed for one run of a campaign; a pure function of its arguments.
std::uint64_t campaign_seed(std::uint64_t master_seed, std::uint64_t stream_tag,
                            std::uint64_t iteration);

/// Worker count: ECSIM_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Writes to a temporary sibling then renames, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// --- bench -----------------------------------------------------------------

struct SweepSpec {
    enum class Variable { Devices, DurationMin };
    Variable variable = Variable::Devices;
    std::vector<double> values;

    /// "devices=200:1000:200" or "duration-min=30:150:30" (inclusive range).
    static SweepSpec parse(std::string_view text);
    std::string_view variable_name() const;
};

struct BenchRow {
    std::string sweep_var;
    double value = 0.0;
    Engine engine = Engine::Baseline;
    double mean_wall_s = 0.0;
    double sd_wall_s = 0.0;
    double mean_peak_queue = 0.0;
};

using BenchProgress = std::function<void(const BenchRow&)>;

/// Runs `iterations` runs per (point, engine) sequentially, so wall times are
/// not distorted by co-scheduled runs. Rows are ordered (point, engine).
std::vector<BenchRow> bench_sweep(const ScenarioConfig& base, const SweepSpec& sweep,
                                  unsigned iterations, const BenchProgress& progress = {});

inline constexpr const char* kBenchHeader =
    "sweep_var,value,engine,mean_wall_s,sd_wall_s,mean_peak_queue";
std::string bench_csv(const std::vector<BenchRow>& rows);

// --- validate --------------------------------------------------------------

/// Table metrics compared across engines.
struct MetricDef {
    std::string_view name;
    std::optional<double> (*extract)(const MetricsSummary&);
};
const std::array<MetricDef, 5>& table_metrics();

struct ValidationOptions {
    unsigned runs_per_engine = 500;
    bool matched_seeds = false;
    unsigned threads = 0;  // 0: worker_threads()
    double alpha = stats::kDefaultAlpha;
    std::vector<PolicyVariant> architectures = {PolicyVariant::SingleTier, PolicyVariant::TwoTier,
                                                PolicyVariant::TwoTierWithOrchestrator};
};

struct ValidationRun {
    PolicyVariant architecture = PolicyVariant::SingleTier;
    Engine engine = Engine::Baseline;
    unsigned iteration = 0;
    std::uint64_t seed = 0;
    MetricsSummary summary;
};

struct KsRow {
    PolicyVariant architecture = PolicyVariant::SingleTier;
    std::string metric;
    stats::KsResult ks;
    bool reject = false;
};

struct QqRow {
    PolicyVariant architecture = PolicyVariant::SingleTier;
    double baseline = 0.0;
    double renovated = 0.0;
};

struct ValidationReport {
    std::vector<ValidationRun> runs;
    std::vector<KsRow> ks;
    std::vector<std::pair<std::string, std::vector<QqRow>>> qq;  // per metric
};

/// Runs `runs_per_engine` runs per engine and architecture with independent
/// seed families (unless matched_seeds), then compares the table metrics.
/// Throws InvalidArgument if runs_per_engine < 30.
ValidationReport validate_equivalence(const ScenarioConfig& cfg, const ValidationOptions& opts);

std::string ks_report_csv(const ValidationReport& report);
std::string qq_csv(const std::vector<QqRow>& rows);
std::string validation_metrics_csv(const ValidationReport& report);

/// Writes ks_report.csv, qq_<metric>.csv and metrics.csv into `dir`.
void write_validation(const ValidationReport& report, const std::filesystem::path& dir);

}  // namespace ecsim
