#include "ecsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ecsim {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(join(path, key), "missing required field");
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ValidationError(field, "expected a number");
    return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ValidationError(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, join(path, key));
}

// null means unlimited.
std::uint64_t capacity_or(const json& obj, const std::string& key, const std::string& path,
                          std::uint64_t fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (it->is_null()) return NetworkConfig::kUnlimited;
    return count(*it, join(path, key));
}

const json& object_at(const json& v, const std::string& field) {
    if (!v.is_object()) throw ValidationError(field, "expected an object");
    return v;
}

std::string indexed(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

}  // namespace

void validate(const ScenarioConfig& cfg) {
    if (!(cfg.duration_min > 0.0) || !std::isfinite(cfg.duration_min))
        throw ValidationError("duration_min", "must be > 0");
    if (cfg.device_count < 1) throw ValidationError("device_count", "must be >= 1");
    if (cfg.access_points.size() < 2) throw ValidationError("access_points", "need at least 2 access points");
    for (std::size_t i = 0; i < cfg.access_points.size(); ++i) {
        const auto& ap = cfg.access_points[i];
        const auto f = indexed("access_points", i);
        if (ap.id != i) throw ValidationError(f + ".id", "ids must be dense and start at 0");
        if (!(ap.attractiveness_s > 0.0)) throw ValidationError(f + ".attractiveness_s", "must be > 0");
        if (!(ap.wlan_bandwidth_mbps > 0.0)) throw ValidationError(f + ".wlan_bandwidth_mbps", "must be > 0");
    }
    if (cfg.profiles.empty()) throw ValidationError("profiles", "need at least one profile");
    double weights = 0.0;
    for (std::size_t i = 0; i < cfg.profiles.size(); ++i) {
        const auto& p = cfg.profiles[i];
        const auto f = indexed("profiles", i);
        if (!(p.weight >= 0.0)) throw ValidationError(f + ".weight", "must be >= 0");
        if (!(p.interarrival_mean_s > 0.0)) throw ValidationError(f + ".interarrival_mean_s", "must be > 0");
        if (!(p.active_s > 0.0)) throw ValidationError(f + ".active_s", "must be > 0");
        if (!(p.idle_s >= 0.0)) throw ValidationError(f + ".idle_s", "must be >= 0");
        if (!(p.upload_bytes > 0.0)) throw ValidationError(f + ".upload_bytes", "must be > 0");
        if (!(p.download_bytes > 0.0)) throw ValidationError(f + ".download_bytes", "must be > 0");
        if (!(p.length_mi > 0.0)) throw ValidationError(f + ".length_mi", "must be > 0");
        if (!(p.vm_utilization_pct > 0.0 && p.vm_utilization_pct <= 100.0))
            throw ValidationError(f + ".vm_utilization_pct", "must be in (0, 100]");
        if (!(p.cloud_probability >= 0.0 && p.cloud_probability <= 1.0))
            throw ValidationError(f + ".cloud_probability", "must be in [0, 1]");
        weights += p.weight;
    }
    if (std::abs(weights - 1.0) > 1e-9) throw ValidationError("profiles.weights", "must sum to 1");
    if (cfg.policy.variant == PolicyVariant::TwoTierWithOrchestrator &&
        !(cfg.policy.edge_utilization_threshold_pct > 0.0 && cfg.policy.edge_utilization_threshold_pct <= 100.0))
        throw ValidationError("policy.edge_utilization_threshold_pct", "must be in (0, 100]");
    if (cfg.edge.vms_per_ap < 1) throw ValidationError("edge.vms_per_ap", "must be >= 1");
    if (!(cfg.edge.mips > 0.0)) throw ValidationError("edge.mips", "must be > 0");
    if (cfg.cloud.vm_count < 1) throw ValidationError("cloud.vm_count", "must be >= 1");
    if (!(cfg.cloud.mips > 0.0)) throw ValidationError("cloud.mips", "must be > 0");
    if (!(cfg.network.wan_bandwidth_mbps > 0.0))
        throw ValidationError("network.wan_bandwidth_mbps", "must be > 0");
    if (!(cfg.network.wan_propagation_s >= 0.0))
        throw ValidationError("network.wan_propagation_s", "must be >= 0");
    if (cfg.network.wlan_device_capacity < 1)
        throw ValidationError("network.wlan_device_capacity", "must be >= 1");
    if (cfg.network.wan_transfer_capacity < 1)
        throw ValidationError("network.wan_transfer_capacity", "must be >= 1");
    if (cfg.snapshot_period_s && !(*cfg.snapshot_period_s > 0.0))
        throw ValidationError("snapshot_period_s", "must be > 0");
}

ScenarioConfig parse_scenario_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    object_at(doc, "<root>");

    ScenarioConfig cfg;
    cfg.duration_min = number(require(doc, "duration_min", ""), "duration_min");
    {
        const auto n = count(require(doc, "device_count", ""), "device_count");
        if (n > 0xFFFFFFFFull) throw ValidationError("device_count", "too large");
        cfg.device_count = static_cast<std::uint32_t>(n);
    }
    if (auto it = doc.find("master_seed"); it != doc.end()) cfg.master_seed = count(*it, "master_seed");

    if (auto it = doc.find("policy"); it != doc.end()) {
        const json& p = object_at(*it, "policy");
        if (auto v = p.find("variant"); v != p.end()) {
            if (!v->is_string()) throw ValidationError("policy.variant", "expected a string");
            auto variant = policy_from_string(v->get<std::string>());
            if (!variant) throw ValidationError("policy.variant", "unknown policy '" + v->get<std::string>() + "'");
            cfg.policy.variant = *variant;
        }
        cfg.policy.edge_utilization_threshold_pct =
            number_or(p, "edge_utilization_threshold_pct", "policy", cfg.policy.edge_utilization_threshold_pct);
    }

    const json& aps = require(doc, "access_points", "");
    if (!aps.is_array()) throw ValidationError("access_points", "expected an array");
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const auto f = indexed("access_points", i);
        const json& a = object_at(aps[i], f);
        AccessPoint ap;
        ap.id = static_cast<ApId>(i);
        if (auto it = a.find("id"); it != a.end()) ap.id = static_cast<ApId>(count(*it, f + ".id"));
        ap.x_m = number_or(a, "x_m", f, 0.0);
        ap.y_m = number_or(a, "y_m", f, 0.0);
        ap.attractiveness_s = number(require(a, "attractiveness_s", f), f + ".attractiveness_s");
        ap.wlan_bandwidth_mbps = number(require(a, "wlan_bandwidth_mbps", f), f + ".wlan_bandwidth_mbps");
        cfg.access_points.push_back(ap);
    }

    if (auto it = doc.find("edge"); it != doc.end()) {
        const json& e = object_at(*it, "edge");
        if (auto v = e.find("vms_per_ap"); v != e.end())
            cfg.edge.vms_per_ap = static_cast<std::uint32_t>(count(*v, "edge.vms_per_ap"));
        cfg.edge.mips = number_or(e, "mips", "edge", cfg.edge.mips);
    }
    if (auto it = doc.find("cloud"); it != doc.end()) {
        const json& c = object_at(*it, "cloud");
        if (auto v = c.find("vm_count"); v != c.end())
            cfg.cloud.vm_count = static_cast<std::uint32_t>(count(*v, "cloud.vm_count"));
        cfg.cloud.mips = number_or(c, "mips", "cloud", cfg.cloud.mips);
    }
    if (auto it = doc.find("network"); it != doc.end()) {
        const json& n = object_at(*it, "network");
        auto& net = cfg.network;
        net.wan_bandwidth_mbps = number_or(n, "wan_bandwidth_mbps", "network", net.wan_bandwidth_mbps);
        net.wan_propagation_s = number_or(n, "wan_propagation_s", "network", net.wan_propagation_s);
        net.wlan_device_capacity = capacity_or(n, "wlan_device_capacity", "network", net.wlan_device_capacity);
        net.wan_transfer_capacity = capacity_or(n, "wan_transfer_capacity", "network", net.wan_transfer_capacity);
    }

    const json& profiles = require(doc, "profiles", "");
    if (!profiles.is_array()) throw ValidationError("profiles", "expected an array");
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto f = indexed("profiles", i);
        const json& p = object_at(profiles[i], f);
        TaskTypeProfile t;
        if (auto it = p.find("name"); it != p.end()) {
            if (!it->is_string()) throw ValidationError(f + ".name", "expected a string");
            t.name = it->get<std::string>();
        } else {
            t.name = "profile" + std::to_string(i);
        }
        t.weight = number_or(p, "weight", f, profiles.size() == 1 ? 1.0 : -1.0);
        if (t.weight < 0.0 && p.find("weight") == p.end())
            throw ValidationError(f + ".weight", "required when more than one profile is given");
        t.interarrival_mean_s = number(require(p, "interarrival_mean_s", f), f + ".interarrival_mean_s");
        t.active_s = number(require(p, "active_s", f), f + ".active_s");
        t.idle_s = number_or(p, "idle_s", f, 0.0);
        t.upload_bytes = number(require(p, "upload_bytes", f), f + ".upload_bytes");
        t.download_bytes = number(require(p, "download_bytes", f), f + ".download_bytes");
        t.length_mi = number(require(p, "length_mi", f), f + ".length_mi");
        t.vm_utilization_pct = number(require(p, "vm_utilization_pct", f), f + ".vm_utilization_pct");
        t.cloud_probability = number_or(p, "cloud_probability", f, 0.0);
        cfg.profiles.push_back(std::move(t));
    }

    if (auto it = doc.find("snapshot_period_s"); it != doc.end() && !it->is_null())
        cfg.snapshot_period_s = number(*it, "snapshot_period_s");

    validate(cfg);
    return cfg;
}

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_json(ss.str());
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    auto capacity = [](std::uint64_t c) -> json { return c == NetworkConfig::kUnlimited ? json(nullptr) : json(c); };
    json doc;
    doc["duration_min"] = cfg.duration_min;
    doc["device_count"] = cfg.device_count;
    doc["master_seed"] = cfg.master_seed;
    doc["policy"] = {{"variant", std::string(to_string(cfg.policy.variant))},
                     {"edge_utilization_threshold_pct", cfg.policy.edge_utilization_threshold_pct}};
    json aps = json::array();
    for (const auto& ap : cfg.access_points)
        aps.push_back({{"id", ap.id},
                       {"x_m", ap.x_m},
                       {"y_m", ap.y_m},
                       {"attractiveness_s", ap.attractiveness_s},
                       {"wlan_bandwidth_mbps", ap.wlan_bandwidth_mbps}});
    doc["access_points"] = aps;
    doc["edge"] = {{"vms_per_ap", cfg.edge.vms_per_ap}, {"mips", cfg.edge.mips}};
    doc["cloud"] = {{"vm_count", cfg.cloud.vm_count}, {"mips", cfg.cloud.mips}};
    doc["network"] = {{"wan_bandwidth_mbps", cfg.network.wan_bandwidth_mbps},
                      {"wan_propagation_s", cfg.network.wan_propagation_s},
                      {"wlan_device_capacity", capacity(cfg.network.wlan_device_capacity)},
                      {"wan_transfer_capacity", capacity(cfg.network.wan_transfer_capacity)}};
    json profiles = json::array();
    for (const auto& p : cfg.profiles)
        profiles.push_back({{"name", p.name},
                            {"weight", p.weight},
                            {"interarrival_mean_s", p.interarrival_mean_s},
                            {"active_s", p.active_s},
                            {"idle_s", p.idle_s},
                            {"upload_bytes", p.upload_bytes},
                            {"download_bytes", p.download_bytes},
                            {"length_mi", p.length_mi},
                            {"vm_utilization_pct", p.vm_utilization_pct},
                            {"cloud_probability", p.cloud_probability}});
    doc["profiles"] = profiles;
    doc["snapshot_period_s"] = cfg.snapshot_period_s ? json(*cfg.snapshot_period_s) : json(nullptr);
    return doc.dump(2) + "\n";
}

}  // namespace ecsim
