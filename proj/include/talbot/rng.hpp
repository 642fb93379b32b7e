#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace talbot {

/// Named, indexed RNG substream. A substream is fully determined by
/// (master seed, label, index), so e.g. Monte-Carlo realisation i always
/// consumes stream ("realization", i) no matter how work is scheduled.
/// Backed by std::mt19937_64, whose output sequence is pinned by the C++
/// standard; uniform doubles are produced by explicit bit manipulation
/// rather than std::uniform_real_distribution (which is not).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Derive the engine seed for a substream without constructing it.
    static std::uint64_t derive(std::uint64_t seed, std::string_view label,
                                std::uint64_t index);

private:
    std::mt19937_64 eng_;
};

/// FNV-1a 64-bit hash (also used for config fingerprints).
std::uint64_t fnv1a64(std::string_view bytes);

/// splitmix64 mixing step.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace talbot
