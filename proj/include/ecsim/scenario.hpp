#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ecsim/compute.hpp"
#include "ecsim/load.hpp"
#include "ecsim/mobility.hpp"
#include "ecsim/network.hpp"

namespace ecsim {

struct ScenarioConfig {
    double duration_min = 0.0;
    std::uint32_t device_count = 0;
    PlacementPolicy policy;
    std::vector<AccessPoint> access_points;
    EdgeConfig edge;
    CloudConfig cloud;
    std::vector<TaskTypeProfile> profiles;
    NetworkConfig network;
    std::optional<double> snapshot_period_s;
    std::uint64_t master_seed = 1;

    SimTime horizon_s() const noexcept { return duration_min * 60.0; }

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ParseError for malformed JSON and ValidationError naming the
/// offending field path for anything that parses but breaks an invariant.
ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig parse_scenario(const std::filesystem::path& path);

/// Checks every invariant; parse_scenario_json calls this.
void validate(const ScenarioConfig& cfg);

/// Writes every field explicitly, defaults included.
std::string serialize_scenario(const ScenarioConfig& cfg);

}  // namespace ecsim
