#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ecsim::stats {

struct KsResult {
    double d = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t m = 0;

    bool rejects(double alpha) const noexcept { return p_value < alpha; }
};

inline constexpr double kDefaultAlpha = 0.05;

/// Largest vertical gap between the two empirical CDFs. Both ECDFs are
/// evaluated after each distinct value, so ties are stepped together.
/// Throws EmptySample.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic Kolmogorov tail with the small-sample correction
/// lambda = d * (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)), ne = n*m / (n+m).
double ks_p_value(double d, std::size_t n, std::size_t m);

KsResult ks_test(std::span<const double> a, std::span<const double> b);

/// Quantile pairs for a Q-Q plot. Equal sizes zip the sorted samples;
/// otherwise each order statistic of the smaller sample, at plotting position
/// (i - 0.5) / n, is paired with the interpolated quantile of the larger one.
/// The first coordinate always comes from `a`. Throws EmptySample.
std::vector<std::pair<double, double>> qq_pairs(std::span<const double> a,
                                                std::span<const double> b);

}  // namespace ecsim::stats
