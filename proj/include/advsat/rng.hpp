#pragma once

#include <cstdint>
#include <random>

namespace advsat {

// splitmix64 finalizer; used to derive independent streams from (seed, tag, counter)
// tuples so results do not depend on evaluation order or worker count.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return hash_combine(hash_combine(seed, tag), index);
}

// uniform double in [0,1) from one counter draw
inline double counter_uniform(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return static_cast<double>(stream_seed(seed, tag, index) >> 11) * 0x1.0p-53;
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return std::mt19937_64(stream_seed(seed, tag, index));
}

}  // namespace advsat
