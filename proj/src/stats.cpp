#include "ecsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ecsim/error.hpp"

namespace ecsim::stats {

namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

void require_non_empty(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "both samples must be non-empty");
}

// Quantile at probability p of a sorted sample whose i-th order statistic
// (1-based) sits at plotting position (i - 0.5) / n. Clamped at both ends.
double interpolated_quantile(const std::vector<double>& sorted, double p) {
    const double n = static_cast<double>(sorted.size());
    const double pos = p * n + 0.5;  // 1-based fractional rank
    if (pos <= 1.0) return sorted.front();
    if (pos >= n) return sorted.back();
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

}  // namespace

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    require_non_empty(a, b);
    const auto x = sorted_copy(a);
    const auto y = sorted_copy(b);
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_p_value(double d, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "sample sizes must be >= 1");
    const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
    const double root = std::sqrt(ne);
    const double lambda = d * (root + 0.12 + 0.11 / root);
    // Below this the alternating series needs thousands of terms and its
    // value is 1 to well beyond double precision.
    if (lambda < 1e-3) return 1.0;
    const double a2 = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100000; ++k) {
        const double term = std::exp(a2 * k * k);
        sum += sign * term;
        if (term < 1e-8) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> a, std::span<const double> b) {
    KsResult r;
    r.d = ks_statistic(a, b);
    r.n = a.size();
    r.m = b.size();
    r.p_value = ks_p_value(r.d, r.n, r.m);
    return r;
}

std::vector<std::pair<double, double>> qq_pairs(std::span<const double> a, std::span<const double> b) {
    require_non_empty(a, b);
    const auto x = sorted_copy(a);
    const auto y = sorted_copy(b);
    std::vector<std::pair<double, double>> out;
    if (x.size() == y.size()) {
        out.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], y[i]);
        return out;
    }
    const bool a_smaller = x.size() < y.size();
    const auto& small = a_smaller ? x : y;
    const auto& large = a_smaller ? y : x;
    const double n = static_cast<double>(small.size());
    out.reserve(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
        const double q = interpolated_quantile(large, (static_cast<double>(i) + 0.5) / n);
        out.push_back(a_smaller ? std::pair{small[i], q} : std::pair{q, small[i]});
    }
    return out;
}

}  // namespace ecsim::stats
