#pragma once

#include <cstdint>

namespace ean {

// SplitMix64 generator. Platform-independent (unlike the standard library
// distributions), so every seeded construction replays bit-identically from
// the seed recorded in its report.
//
// Split rule, part of the external contract for partitioned searches:
// child i of a generator seeded with s is seeded with
// mix(s + (i + 1) * 0x9e3779b97f4a7c15).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, bound), rejection sampled to avoid modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t(0) / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    SplitMix64 split(std::uint64_t stream) const {
        return SplitMix64(mix(seed_ + (stream + 1) * 0x9e3779b97f4a7c15ULL));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace ean
