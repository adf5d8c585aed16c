#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ecsim/scenario.hpp"

namespace ecsim::testing {

// Hands out a fixed script of variates; running past the end is a test bug.
struct ScriptedSource {
    std::vector<double> values;
    std::size_t next = 0;

    double uniform() {
        if (next >= values.size()) throw std::out_of_range("scripted source exhausted");
        return values[next++];
    }
};

// Variate that an exponential inverse transform with `mean` maps to `x`.
inline double variate_for(double mean, double x) { return -std::expm1(-x / mean); }

inline ScenarioConfig small_scenario(std::uint32_t devices = 20, double minutes = 10.0,
                                     std::size_t aps = 4) {
    ScenarioConfig cfg;
    cfg.duration_min = minutes;
    cfg.device_count = devices;
    for (std::size_t i = 0; i < aps; ++i)
        cfg.access_points.push_back({static_cast<ApId>(i), 0.0, 0.0, i % 2 == 0 ? 120.0 : 300.0, 100.0});
    cfg.profiles.push_back({"light", 0.6, 10.0, 40.0, 20.0, 200000.0, 100000.0, 4000.0, 20.0, 0.3});
    cfg.profiles.push_back({"heavy", 0.4, 20.0, 60.0, 30.0, 1000000.0, 500000.0, 20000.0, 45.0, 0.5});
    cfg.edge = {1, 4000.0};
    cfg.cloud = {2, 16000.0};
    cfg.policy = {PolicyVariant::TwoTierWithOrchestrator, 70.0};
    return cfg;
}

}  // namespace ecsim::testing
