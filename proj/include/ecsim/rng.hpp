#pragma once

#include <cstdint>

namespace ecsim {

// What a substream is used for. Values are mixed into the stream key, so they
// must stay stable across releases or recorded seeds stop reproducing.
enum class StreamPurpose : std::uint64_t {
    MobilityDwell = 1,
    MobilityDestination = 2,
    Load = 3,
    Placement = 4,
    ProfileAssignment = 5,
};

namespace rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t master_seed, std::uint64_t device,
                                   StreamPurpose purpose) noexcept {
    std::uint64_t k = mix64(master_seed + kGolden);
    k = mix64(k ^ ((device + 1) * 0xD1B54A32D192ED03ULL));
    k = mix64(k ^ (static_cast<std::uint64_t>(purpose) * 0xAEF17502108EF2D9ULL));
    return k;
}

}  // namespace rng

/// Counter-based random stream: the i-th output depends only on (key, i).
///
/// Every (master seed, device, purpose) triple owns one stream, so two
/// algorithms that consume the same variates in the same per-stream order see
/// identical values no matter how their draws interleave globally.
class Stream {
public:
    Stream() = default;
    explicit Stream(std::uint64_t key) noexcept : key_(key) {}
    Stream(std::uint64_t master_seed, std::uint64_t device, StreamPurpose purpose) noexcept
        : key_(rng::derive_key(master_seed, device, purpose)) {}

    std::uint64_t next_u64() noexcept {
        ++counter_;
        return rng::mix64(key_ + counter_ * rng::kGolden);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace ecsim
