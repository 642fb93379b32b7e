#include "talbot/rng.hpp"

namespace talbot {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t RngStream::derive(std::uint64_t seed, std::string_view label,
                                std::uint64_t index)
{
    std::uint64_t state = seed ^ fnv1a64(label);
    std::uint64_t mixed = splitmix64(state);
    state = mixed ^ index;
    mixed = splitmix64(state);
    return mixed;
}

RngStream::RngStream(std::uint64_t seed, std::string_view label, std::uint64_t index)
    : eng_(derive(seed, label, index))
{
}

} // namespace talbot
