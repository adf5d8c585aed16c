#include "ecsim/campaign.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "ecsim/rng.hpp"

namespace ecsim {

std::uint64_t campaign_seed(std::uint64_t master_seed, std::uint64_t stream_tag, std::uint64_t iteration) {
    std::uint64_t k = rng::mix64(master_seed ^ 0x5851F42D4C957F2DULL);
    k = rng::mix64(k + (stream_tag + 1) * rng::kGolden);
    return rng::mix64(k + (iteration + 1) * 0xD1B54A32D192ED03ULL);
}

unsigned worker_threads() {
    if (const char* env = std::getenv("ECSIM_THREADS")) {
        unsigned v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!first) first = std::current_exception();
                stop = true;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (first) std::rethrow_exception(first);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
    const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

// --- bench -----------------------------------------------------------------

namespace {

double parse_number(std::string_view s, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, "bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto at = s.find(sep, pos);
        out.push_back(s.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
        if (at == std::string_view::npos) return out;
        pos = at + 1;
    }
}

ScenarioConfig at_point(const ScenarioConfig& base, SweepSpec::Variable var, double value) {
    ScenarioConfig cfg = base;
    if (var == SweepSpec::Variable::Devices)
        cfg.device_count = static_cast<std::uint32_t>(value);
    else
        cfg.duration_min = value;
    return cfg;
}

}  // namespace

SweepSpec SweepSpec::parse(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw Error(ErrorCode::InvalidArgument, "sweep must look like devices=A:B:STEP or duration-min=A:B:STEP");
    SweepSpec spec;
    const auto name = text.substr(0, eq);
    if (name == "devices")
        spec.variable = Variable::Devices;
    else if (name == "duration-min")
        spec.variable = Variable::DurationMin;
    else
        throw Error(ErrorCode::InvalidArgument, "unknown sweep variable '" + std::string(name) + "'");

    const auto range = split(text.substr(eq + 1), ':');
    if (range.size() != 3) throw Error(ErrorCode::InvalidArgument, "sweep range must be A:B:STEP");
    const double lo = parse_number(range[0], "sweep start");
    const double hi = parse_number(range[1], "sweep end");
    const double step = parse_number(range[2], "sweep step");
    if (!(step > 0.0) || hi < lo || !(lo > 0.0)) throw Error(ErrorCode::InvalidArgument, "empty or invalid sweep range");
    const auto points = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < points; ++i) spec.values.push_back(lo + static_cast<double>(i) * step);
    if (spec.variable == Variable::Devices)
        for (double v : spec.values)
            if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "device counts must be integers");
    return spec;
}

std::string_view SweepSpec::variable_name() const {
    return variable == Variable::Devices ? "devices" : "duration-min";
}

std::vector<BenchRow> bench_sweep(const ScenarioConfig& base, const SweepSpec& sweep, unsigned iterations,
                                  const BenchProgress& progress) {
    if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
    std::vector<BenchRow> rows;
    for (double value : sweep.values) {
        const ScenarioConfig cfg = at_point(base, sweep.variable, value);
        validate(cfg);
        for (Engine engine : {Engine::Baseline, Engine::Renovated}) {
            double sum = 0.0, sum_sq = 0.0, peak = 0.0;
            for (unsigned it = 0; it < iterations; ++it) {
                const RunResult r = run_scenario(cfg, engine, campaign_seed(base.master_seed, 0, it));
                sum += r.stats.wall_time_s;
                sum_sq += r.stats.wall_time_s * r.stats.wall_time_s;
                peak += static_cast<double>(r.stats.peak_queue_size);
            }
            const double n = iterations;
            BenchRow row;
            row.sweep_var = sweep.variable_name();
            row.value = value;
            row.engine = engine;
            row.mean_wall_s = sum / n;
            row.sd_wall_s = iterations > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0))) : 0.0;
            row.mean_peak_queue = peak / n;
            if (progress) progress(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    using csv::format_double;
    std::string out = std::string(kBenchHeader) + "\n";
    for (const auto& r : rows)
        out += r.sweep_var + ',' + format_double(r.value) + ',' + std::string(to_string(r.engine)) + ',' +
               format_double(r.mean_wall_s) + ',' + format_double(r.sd_wall_s) + ',' +
               format_double(r.mean_peak_queue) + '\n';
    return out;
}

// --- validate --------------------------------------------------------------

const std::array<MetricDef, 5>& table_metrics() {
    static const std::array<MetricDef, 5> metrics{{
        {"tasks_generated", [](const MetricsSummary& m) -> std::optional<double> { return static_cast<double>(m.tasks_generated); }},
        {"failed_rel", [](const MetricsSummary& m) -> std::optional<double> { return m.failed_rel_pct; }},
        {"avg_service_time", [](const MetricsSummary& m) { return m.avg_service_time_s; }},
        {"failed_mob", [](const MetricsSummary& m) -> std::optional<double> { return static_cast<double>(m.failed_mobility); }},
        {"failed_vm", [](const MetricsSummary& m) -> std::optional<double> { return static_cast<double>(m.failed_vm); }},
    }};
    return metrics;
}

ValidationReport validate_equivalence(const ScenarioConfig& cfg, const ValidationOptions& opts) {
    if (opts.runs_per_engine < 30) throw Error(ErrorCode::InvalidArgument, "validation needs at least 30 runs per engine");
    validate(cfg);
    const std::size_t per_arch = 2 * static_cast<std::size_t>(opts.runs_per_engine);

    ValidationReport report;
    report.runs.resize(opts.architectures.size() * per_arch);
    for (std::size_t a = 0; a < opts.architectures.size(); ++a)
        for (std::size_t k = 0; k < per_arch; ++k) {
            ValidationRun& run = report.runs[a * per_arch + k];
            run.architecture = opts.architectures[a];
            run.engine = k < opts.runs_per_engine ? Engine::Baseline : Engine::Renovated;
            run.iteration = static_cast<unsigned>(k % opts.runs_per_engine);
            const std::uint64_t family = opts.matched_seeds ? 0 : 1 + static_cast<std::uint64_t>(run.engine);
            run.seed = campaign_seed(cfg.master_seed, static_cast<std::uint64_t>(run.architecture) * 4 + family,
                                     run.iteration);
        }

    parallel_for(report.runs.size(), opts.threads == 0 ? worker_threads() : opts.threads, [&](std::size_t i) {
        ValidationRun& run = report.runs[i];
        ScenarioConfig c = cfg;
        c.policy.variant = run.architecture;
        run.summary = run_scenario(c, run.engine, run.seed).summary;
    });

    for (const auto& metric : table_metrics()) report.qq.emplace_back(std::string(metric.name), std::vector<QqRow>{});
    for (std::size_t a = 0; a < opts.architectures.size(); ++a) {
        for (std::size_t mi = 0; mi < table_metrics().size(); ++mi) {
            const auto& metric = table_metrics()[mi];
            std::vector<double> base, reno;
            for (std::size_t k = 0; k < per_arch; ++k) {
                const ValidationRun& run = report.runs[a * per_arch + k];
                if (auto v = metric.extract(run.summary)) (run.engine == Engine::Baseline ? base : reno).push_back(*v);
            }
            KsRow row;
            row.architecture = opts.architectures[a];
            row.metric = std::string(metric.name);
            if (base.empty() || reno.empty()) {
                row.ks = {base.empty() && reno.empty() ? 0.0 : 1.0, base.empty() && reno.empty() ? 1.0 : 0.0,
                          base.size(), reno.size()};
            } else {
                row.ks = stats::ks_test(base, reno);
                for (const auto& [x, y] : stats::qq_pairs(base, reno))
                    report.qq[mi].second.push_back({row.architecture, x, y});
            }
            row.reject = row.ks.rejects(opts.alpha);
            report.ks.push_back(std::move(row));
        }
    }
    return report;
}

std::string ks_report_csv(const ValidationReport& report) {
    using csv::format_double;
    std::string out = "architecture,metric,d,p,reject_at_alpha,n,m\n";
    for (const auto& r : report.ks)
        out += std::string(to_string(r.architecture)) + ',' + r.metric + ',' + format_double(r.ks.d) + ',' +
               format_double(r.ks.p_value) + ',' + (r.reject ? "true" : "false") + ',' + std::to_string(r.ks.n) +
               ',' + std::to_string(r.ks.m) + '\n';
    return out;
}

std::string qq_csv(const std::vector<QqRow>& rows) {
    using csv::format_double;
    std::string out = "architecture,baseline,renovated\n";
    for (const auto& r : rows)
        out += std::string(to_string(r.architecture)) + ',' + format_double(r.baseline) + ',' +
               format_double(r.renovated) + '\n';
    return out;
}

std::string validation_metrics_csv(const ValidationReport& report) {
    std::string out = std::string("architecture,engine,iteration,seed,") + csv::kMetricsHeader + "\n";
    for (const auto& r : report.runs)
        out += std::string(to_string(r.architecture)) + ',' + std::string(to_string(r.engine)) + ',' +
               std::to_string(r.iteration) + ',' + std::to_string(r.seed) + ',' + csv::metrics_fields(r.summary) +
               '\n';
    return out;
}

void write_validation(const ValidationReport& report, const std::filesystem::path& dir) {
    write_file_atomic(dir / "ks_report.csv", ks_report_csv(report));
    for (const auto& [metric, rows] : report.qq) write_file_atomic(dir / ("qq_" + metric + ".csv"), qq_csv(rows));
    write_file_atomic(dir / "metrics.csv", validation_metrics_csv(report));
}

}  // namespace ecsim
