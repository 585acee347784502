#pragma once

#include <cstdint>
#include <random>

namespace tgc {

// splitmix64 finalizer; used to derive independent, reproducible seed streams
// from one user-facing seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(base ^ mix_seed(stream));
}

inline std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_seed(base, stream));
}

}  // namespace tgc
