/*
 * ecsim C API.
 *
 * A scenario is loaded once into an opaque handle and can then be run,
 * benchmarked or validated any number of times. Every call returns an
 * ecsim_status; on failure ecsim_last_error() describes what went wrong on
 * the calling thread.
 */
#ifndef ECSIM_H
#define ECSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define ECSIM_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define ECSIM_API __attribute__((visibility("default")))
#else
#  define ECSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ecsim_scenario ecsim_scenario;

typedef enum ecsim_status {
    ECSIM_OK = 0,
    ECSIM_ERR_INVALID_ARGUMENT = 1,
    ECSIM_ERR_PARSE = 2,
    ECSIM_ERR_VALIDATION = 3,
    ECSIM_ERR_IO = 4,
    ECSIM_ERR_SIMULATION = 5,
    ECSIM_ERR_INTERNAL = 6
} ecsim_status;

typedef enum ecsim_engine {
    ECSIM_ENGINE_BASELINE = 0,
    ECSIM_ENGINE_RENOVATED = 1
} ecsim_engine;

typedef enum ecsim_policy {
    ECSIM_POLICY_SINGLE_TIER = 0,
    ECSIM_POLICY_TWO_TIER = 1,
    ECSIM_POLICY_TWO_TIER_ORCHESTRATOR = 2
} ecsim_policy;

typedef struct ecsim_metrics {
    uint64_t tasks_generated;
    uint64_t completed;
    uint64_t failed_network;
    uint64_t failed_mobility;
    uint64_t failed_vm;
    double failed_rel_pct;
    int has_avg_service_time; /* 0 when no task completed */
    double avg_service_time_s;
    double wall_time_s;
    uint64_t peak_queue_size;
} ecsim_metrics;

typedef struct ecsim_run_stats {
    uint64_t events_dispatched;
    uint64_t peak_queue_size;
    double wall_time_s;
} ecsim_run_stats;

typedef struct ecsim_bench_row {
    char sweep_var[16];
    double value;
    ecsim_engine engine;
    double mean_wall_s;
    double sd_wall_s;
    double mean_peak_queue;
} ecsim_bench_row;

typedef struct ecsim_ks_row {
    ecsim_policy architecture;
    char metric[32];
    double d;
    double p_value;
    int reject;
} ecsim_ks_row;

#define ECSIM_RUN_SNAPSHOTS 0x1u
#define ECSIM_VALIDATE_MATCHED_SEEDS 0x1u

ECSIM_API const char* ecsim_version(void);
ECSIM_API const char* ecsim_status_string(ecsim_status status);

/* Message for the most recent failure on this thread; "" if none. */
ECSIM_API const char* ecsim_last_error(void);

ECSIM_API ecsim_status ecsim_scenario_load(const char* path, ecsim_scenario** out);
ECSIM_API ecsim_status ecsim_scenario_parse(const char* json, ecsim_scenario** out);
ECSIM_API void ecsim_scenario_free(ecsim_scenario* scenario);

ECSIM_API ecsim_status ecsim_scenario_set_device_count(ecsim_scenario* scenario, uint32_t devices);
ECSIM_API ecsim_status ecsim_scenario_set_duration_min(ecsim_scenario* scenario, double minutes);
ECSIM_API ecsim_status ecsim_scenario_set_policy(ecsim_scenario* scenario, ecsim_policy policy);
ECSIM_API uint32_t ecsim_scenario_device_count(const ecsim_scenario* scenario);
ECSIM_API double ecsim_scenario_duration_min(const ecsim_scenario* scenario);
ECSIM_API uint64_t ecsim_scenario_master_seed(const ecsim_scenario* scenario);

/*
 * One simulation run. When out_dir is non-NULL, metrics.csv and run_stats.csv
 * (and locations.csv with ECSIM_RUN_SNAPSHOTS) are written there. metrics and
 * stats may be NULL.
 */
ECSIM_API ecsim_status ecsim_run(const ecsim_scenario* scenario, ecsim_engine engine, uint64_t seed,
                                 uint32_t flags, const char* out_dir, ecsim_metrics* metrics,
                                 ecsim_run_stats* stats);

/*
 * Wall-time sweep. sweep is "devices=A:B:STEP" or "duration-min=A:B:STEP".
 * Writes bench.csv to out_dir when non-NULL. Up to `capacity` rows are copied
 * to `rows`; *row_count receives the total number of rows.
 */
ECSIM_API ecsim_status ecsim_bench(const ecsim_scenario* scenario, const char* sweep,
                                   uint32_t iterations, const char* out_dir, ecsim_bench_row* rows,
                                   size_t capacity, size_t* row_count);

/*
 * Cross-engine KS validation over all three architectures. Writes
 * ks_report.csv, qq_<metric>.csv and metrics.csv to out_dir when non-NULL.
 */
ECSIM_API ecsim_status ecsim_validate(const ecsim_scenario* scenario, uint32_t runs_per_engine,
                                      uint32_t flags, const char* out_dir, ecsim_ks_row* rows,
                                      size_t capacity, size_t* row_count);

/* KS helpers on raw samples. */
ECSIM_API ecsim_status ecsim_ks_test(const double* a, size_t n, const double* b, size_t m,
                                     double* d, double* p_value);

#ifdef __cplusplus
}
#endif

#endif /* ECSIM_H */
