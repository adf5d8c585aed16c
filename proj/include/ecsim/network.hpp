#pragma once

#include <cstdint>
#include <limits>

#include "ecsim/mobility.hpp"

namespace ecsim {

enum class NetworkFailure : std::uint8_t { None, WlanCongestion, WanCongestion };

struct Transfer {
    double seconds = 0.0;
    NetworkFailure failure = NetworkFailure::None;

    bool ok() const noexcept { return failure == NetworkFailure::None; }
};

struct NetworkConfig {
    double wan_bandwidth_mbps = 200.0;
    double wan_propagation_s = 0.1;
    std::uint64_t wlan_device_capacity = 100;
    std::uint64_t wan_transfer_capacity = 50;

    static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

    bool operator==(const NetworkConfig&) const = default;
};

/// Fair-share delay model. The nominal bandwidth of a link is split evenly
/// among its users and a transfer fails outright once a link's user count
/// exceeds its capacity. Delays are fixed at transfer start.
class NetworkState {
public:
    explicit NetworkState(NetworkConfig config) : config_(config) {}

    /// `devices_at_ap` includes the sender itself.
    Transfer wlan_delay(const AccessPoint& ap, std::uint32_t devices_at_ap, double bytes) const;

    /// Delay for a new WAN transfer given the transfers already active.
    Transfer wan_delay(double bytes) const;

    void begin_wan_transfer() noexcept { ++active_wan_; }
    void end_wan_transfer();

    std::uint64_t active_wan_transfers() const noexcept { return active_wan_; }
    const NetworkConfig& config() const noexcept { return config_; }

private:
    NetworkConfig config_;
    std::uint64_t active_wan_ = 0;
};

}  // namespace ecsim
