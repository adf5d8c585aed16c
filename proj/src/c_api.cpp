#include "ecsim/ecsim.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "ecsim/campaign.hpp"
#include "ecsim/scenario.hpp"
#include "ecsim/simulation.hpp"
#include "ecsim/stats.hpp"

struct ecsim_scenario {
    ecsim::ScenarioConfig config;
};

namespace {

thread_local std::string last_error;

ecsim_status status_for(ecsim::ErrorCode code) {
    using ecsim::ErrorCode;
    switch (code) {
        case ErrorCode::ParseError: return ECSIM_ERR_PARSE;
        case ErrorCode::ValidationError: return ECSIM_ERR_VALIDATION;
        case ErrorCode::Io: return ECSIM_ERR_IO;
        case ErrorCode::InvalidArgument:
        case ErrorCode::EmptySample: return ECSIM_ERR_INVALID_ARGUMENT;
        default: return ECSIM_ERR_SIMULATION;
    }
}

ecsim_status fail(ecsim_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body` with exceptions translated into status codes.
template <typename Body>
ecsim_status guarded(Body&& body) noexcept {
    try {
        last_error.clear();
        body();
        return ECSIM_OK;
    } catch (const ecsim::Error& e) {
        return fail(status_for(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ECSIM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ECSIM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ECSIM_ERR_INTERNAL, "unknown error");
    }
}

ecsim::PolicyVariant to_variant(ecsim_policy p) {
    switch (p) {
        case ECSIM_POLICY_SINGLE_TIER: return ecsim::PolicyVariant::SingleTier;
        case ECSIM_POLICY_TWO_TIER: return ecsim::PolicyVariant::TwoTier;
        case ECSIM_POLICY_TWO_TIER_ORCHESTRATOR: return ecsim::PolicyVariant::TwoTierWithOrchestrator;
    }
    throw ecsim::Error(ecsim::ErrorCode::InvalidArgument, "unknown policy " + std::to_string(static_cast<int>(p)));
}

ecsim_policy to_c(ecsim::PolicyVariant v) {
    switch (v) {
        case ecsim::PolicyVariant::SingleTier: return ECSIM_POLICY_SINGLE_TIER;
        case ecsim::PolicyVariant::TwoTier: return ECSIM_POLICY_TWO_TIER;
        case ecsim::PolicyVariant::TwoTierWithOrchestrator: return ECSIM_POLICY_TWO_TIER_ORCHESTRATOR;
    }
    return ECSIM_POLICY_SINGLE_TIER;
}

ecsim::Engine to_engine(ecsim_engine e) {
    if (e == ECSIM_ENGINE_BASELINE) return ecsim::Engine::Baseline;
    if (e == ECSIM_ENGINE_RENOVATED) return ecsim::Engine::Renovated;
    throw ecsim::Error(ecsim::ErrorCode::InvalidArgument, "unknown engine " + std::to_string(static_cast<int>(e)));
}

void copy_text(char* dst, std::size_t cap, const std::string& src) {
    const std::size_t n = std::min(cap - 1, src.size());
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

void require(bool ok, const char* what) {
    if (!ok) throw ecsim::Error(ecsim::ErrorCode::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* ecsim_version(void) { return "1.0.0"; }

const char* ecsim_status_string(ecsim_status status) {
    switch (status) {
        case ECSIM_OK: return "ok";
        case ECSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ECSIM_ERR_PARSE: return "parse error";
        case ECSIM_ERR_VALIDATION: return "validation error";
        case ECSIM_ERR_IO: return "I/O error";
        case ECSIM_ERR_SIMULATION: return "simulation error";
        case ECSIM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ecsim_last_error(void) { return last_error.c_str(); }

ecsim_status ecsim_scenario_load(const char* path, ecsim_scenario** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must not be NULL");
        *out = nullptr;
        *out = new ecsim_scenario{ecsim::parse_scenario(path)};
    });
}

ecsim_status ecsim_scenario_parse(const char* json, ecsim_scenario** out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "json and out must not be NULL");
        *out = nullptr;
        *out = new ecsim_scenario{ecsim::parse_scenario_json(json)};
    });
}

void ecsim_scenario_free(ecsim_scenario* scenario) { delete scenario; }

ecsim_status ecsim_scenario_set_device_count(ecsim_scenario* scenario, uint32_t devices) {
    return guarded([&] {
        require(scenario != nullptr, "scenario must not be NULL");
        ecsim::ScenarioConfig next = scenario->config;
        next.device_count = devices;
        ecsim::validate(next);
        scenario->config = std::move(next);
    });
}

ecsim_status ecsim_scenario_set_duration_min(ecsim_scenario* scenario, double minutes) {
    return guarded([&] {
        require(scenario != nullptr, "scenario must not be NULL");
        ecsim::ScenarioConfig next = scenario->config;
        next.duration_min = minutes;
        ecsim::validate(next);
        scenario->config = std::move(next);
    });
}

ecsim_status ecsim_scenario_set_policy(ecsim_scenario* scenario, ecsim_policy policy) {
    return guarded([&] {
        require(scenario != nullptr, "scenario must not be NULL");
        ecsim::ScenarioConfig next = scenario->config;
        next.policy.variant = to_variant(policy);
        ecsim::validate(next);
        scenario->config = std::move(next);
    });
}

uint32_t ecsim_scenario_device_count(const ecsim_scenario* scenario) {
    return scenario ? scenario->config.device_count : 0;
}

double ecsim_scenario_duration_min(const ecsim_scenario* scenario) {
    return scenario ? scenario->config.duration_min : 0.0;
}

uint64_t ecsim_scenario_master_seed(const ecsim_scenario* scenario) {
    return scenario ? scenario->config.master_seed : 0;
}

ecsim_status ecsim_run(const ecsim_scenario* scenario, ecsim_engine engine, uint64_t seed, uint32_t flags,
                       const char* out_dir, ecsim_metrics* metrics, ecsim_run_stats* stats) {
    return guarded([&] {
        require(scenario != nullptr, "scenario must not be NULL");
        const ecsim::Engine e = to_engine(engine);
        const bool snapshots = (flags & ECSIM_RUN_SNAPSHOTS) != 0;
        const ecsim::RunResult r = ecsim::run_scenario(scenario->config, e, seed, snapshots);

        if (metrics != nullptr) {
            const auto& m = r.summary;
            metrics->tasks_generated = m.tasks_generated;
            metrics->completed = m.completed;
            metrics->failed_network = m.failed_network;
            metrics->failed_mobility = m.failed_mobility;
            metrics->failed_vm = m.failed_vm;
            metrics->failed_rel_pct = m.failed_rel_pct;
            metrics->has_avg_service_time = m.avg_service_time_s.has_value() ? 1 : 0;
            metrics->avg_service_time_s = m.avg_service_time_s.value_or(0.0);
            metrics->wall_time_s = m.wall_time_s;
            metrics->peak_queue_size = m.peak_queue_size;
        }
        if (stats != nullptr) {
            stats->events_dispatched = r.stats.events_dispatched;
            stats->peak_queue_size = r.stats.peak_queue_size;
            stats->wall_time_s = r.stats.wall_time_s;
        }
        if (out_dir == nullptr) return;

        const std::filesystem::path dir(out_dir);
        const std::string prefix = std::string(ecsim::to_string(e)) + ',' + std::to_string(seed) + ',';
        ecsim::write_file_atomic(dir / "metrics.csv", std::string("engine,seed,") + ecsim::csv::kMetricsHeader +
                                                          "\n" + prefix + ecsim::csv::metrics_fields(r.summary) + "\n");
        ecsim::write_file_atomic(dir / "run_stats.csv",
                                 std::string(ecsim::csv::kRunStatsHeader) + "\n" + prefix +
                                     std::to_string(r.stats.events_dispatched) + ',' +
                                     std::to_string(r.stats.peak_queue_size) + ',' +
                                     ecsim::csv::format_double(r.stats.wall_time_s) + "\n");
        if (snapshots) {
            std::string rows = "time,ap_id,device_count\n";
            for (const auto& row : r.locations)
                rows += ecsim::csv::format_double(row.time) + ',' + std::to_string(row.ap) + ',' +
                        std::to_string(row.device_count) + '\n';
            ecsim::write_file_atomic(dir / "locations.csv", rows);
        }
    });
}

ecsim_status ecsim_bench(const ecsim_scenario* scenario, const char* sweep, uint32_t iterations, const char* out_dir,
                         ecsim_bench_row* rows, size_t capacity, size_t* row_count) {
    return guarded([&] {
        require(scenario != nullptr && sweep != nullptr, "scenario and sweep must not be NULL");
        require(rows != nullptr || capacity == 0, "rows must not be NULL when capacity > 0");
        const auto spec = ecsim::SweepSpec::parse(sweep);
        const auto result = ecsim::bench_sweep(scenario->config, spec, iterations);
        if (out_dir != nullptr)
            ecsim::write_file_atomic(std::filesystem::path(out_dir) / "bench.csv", ecsim::bench_csv(result));
        for (std::size_t i = 0; i < result.size() && i < capacity; ++i) {
            copy_text(rows[i].sweep_var, sizeof rows[i].sweep_var, result[i].sweep_var);
            rows[i].value = result[i].value;
            rows[i].engine = result[i].engine == ecsim::Engine::Baseline ? ECSIM_ENGINE_BASELINE : ECSIM_ENGINE_RENOVATED;
            rows[i].mean_wall_s = result[i].mean_wall_s;
            rows[i].sd_wall_s = result[i].sd_wall_s;
            rows[i].mean_peak_queue = result[i].mean_peak_queue;
        }
        if (row_count != nullptr) *row_count = result.size();
    });
}

ecsim_status ecsim_validate(const ecsim_scenario* scenario, uint32_t runs_per_engine, uint32_t flags,
                            const char* out_dir, ecsim_ks_row* rows, size_t capacity, size_t* row_count) {
    return guarded([&] {
        require(scenario != nullptr, "scenario must not be NULL");
        require(rows != nullptr || capacity == 0, "rows must not be NULL when capacity > 0");
        ecsim::ValidationOptions opts;
        opts.runs_per_engine = runs_per_engine;
        opts.matched_seeds = (flags & ECSIM_VALIDATE_MATCHED_SEEDS) != 0;
        const auto report = ecsim::validate_equivalence(scenario->config, opts);
        if (out_dir != nullptr) ecsim::write_validation(report, out_dir);
        for (std::size_t i = 0; i < report.ks.size() && i < capacity; ++i) {
            const auto& k = report.ks[i];
            rows[i].architecture = to_c(k.architecture);
            copy_text(rows[i].metric, sizeof rows[i].metric, k.metric);
            rows[i].d = k.ks.d;
            rows[i].p_value = k.ks.p_value;
            rows[i].reject = k.reject ? 1 : 0;
        }
        if (row_count != nullptr) *row_count = report.ks.size();
    });
}

ecsim_status ecsim_ks_test(const double* a, size_t n, const double* b, size_t m, double* d, double* p_value) {
    return guarded([&] {
        require((a != nullptr || n == 0) && (b != nullptr || m == 0), "sample pointers must not be NULL");
        const auto r = ecsim::stats::ks_test(std::span<const double>(a, n), std::span<const double>(b, m));
        if (d != nullptr) *d = r.d;
        if (p_value != nullptr) *p_value = r.p_value;
    });
}

}  // extern "C"
