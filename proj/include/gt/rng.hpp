#pragma once

#include <cstdint>

// SplitMix64. The sampler addresses matrix entries by counter rather than by
// stream position, so a seed fixes every entry independently of draw order.

namespace gt {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0,1) from the top 53 bits.
constexpr double unit_interval(std::uint64_t x) noexcept
{
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Value of counter `index` in the stream keyed by `key`.
constexpr std::uint64_t counter_value(std::uint64_t key, std::uint64_t index) noexcept
{
    return splitmix_mix(key + (index + 1) * kGolden);
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t operator()() noexcept
    {
        state_ += kGolden;
        return splitmix_mix(state_);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do
            x = (*this)();
        while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace gt
