#include "ecsim/network.hpp"

namespace ecsim {

namespace {

double transmit_seconds(double bytes, double share_mbps) { return 8.0 * bytes / (share_mbps * 1e6); }

}  // namespace

Transfer NetworkState::wlan_delay(const AccessPoint& ap, std::uint32_t devices_at_ap, double bytes) const {
    if (bytes <= 0.0) throw Error(ErrorCode::InvalidArgument, "payload must be positive");
    const std::uint32_t n = devices_at_ap == 0 ? 1 : devices_at_ap;
    if (n > config_.wlan_device_capacity) return {0.0, NetworkFailure::WlanCongestion};
    return {transmit_seconds(bytes, ap.wlan_bandwidth_mbps / n), NetworkFailure::None};
}

Transfer NetworkState::wan_delay(double bytes) const {
    if (bytes <= 0.0) throw Error(ErrorCode::InvalidArgument, "payload must be positive");
    const std::uint64_t m = active_wan_ + 1;
    if (m > config_.wan_transfer_capacity) return {0.0, NetworkFailure::WanCongestion};
    return {config_.wan_propagation_s +
                transmit_seconds(bytes, config_.wan_bandwidth_mbps / static_cast<double>(m)),
            NetworkFailure::None};
}

void NetworkState::end_wan_transfer() {
    if (active_wan_ == 0) throw Error(ErrorCode::InconsistentState, "WAN transfer counter underflow");
    --active_wan_;
}

}  // namespace ecsim
