#pragma once

#include <cstdint>

namespace cab {

// SplitMix64; used both as a standalone generator and to derive substream
// seeds from a root seed, so that parallel sampling is independent of how
// blocks are assigned to workers.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased-enough bounded draw with a fixed algorithm (no reliance on
    // std::uniform_int_distribution, which is implementation-defined).
    uint32_t bounded(uint32_t n) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }
};

inline uint64_t substream_seed(uint64_t root, uint64_t index) {
    SplitMix64 g(root ^ (0x8C9FAD312F04C1E5ull + index * 0xD1B54A32D192ED03ull));
    g.next();
    return g.next();
}

}  // namespace cab
