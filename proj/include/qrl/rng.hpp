#pragma once

#include <cstdint>
#include <random>

namespace qrl {

// Seeded random stream with explicit derivation of per-worker substreams.
// mt19937_64 is fully specified by the standard, so a given seed produces
// the same draw sequence on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

    // Substream for worker `index` of a master seed. splitmix64 scrambles
    // the combination so adjacent indices give unrelated streams.
    static RandomStream derive(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return RandomStream(z);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qrl
