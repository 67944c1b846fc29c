#pragma once

#include <cstdint>

namespace qcs {

// Deterministic 64-bit generator (SplitMix64, Steele et al. 2014).
// The algorithm is fixed so that reruns are bit-identical across
// platforms and compiler versions; std:: engines are not used for
// sampling because their distributions are not bit-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Per-trial stream: state = mix(master) xor mix(index + 1).
    // Streams for distinct trial indices are independent for any
    // practical draw count, and permuting trial order cannot couple them.
    static Rng stream(std::uint64_t master_seed, std::uint64_t trial_index) {
        return Rng(mix(master_seed) ^ mix(trial_index + 1));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace qcs
