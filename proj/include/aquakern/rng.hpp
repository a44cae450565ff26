#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aquakern::rng {

// splitmix64 finalizer; used to expand one root seed into independent
// per-stage streams so adding a pipeline stage never perturbs another
// stage's draws.
constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a08a85ae12c5ULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stream seed for (root, stage tag, counters).
inline std::uint64_t derive(std::uint64_t root, std::string_view stage,
                            std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = mix(root ^ hash_tag(stage));
    s = mix(s ^ a);
    return mix(s ^ (b + 0x517cc1b727220a95ULL));
}

inline std::mt19937_64 engine(std::uint64_t root, std::string_view stage,
                              std::uint64_t a = 0, std::uint64_t b = 0) {
    return std::mt19937_64(derive(root, stage, a, b));
}

}  // namespace aquakern::rng
