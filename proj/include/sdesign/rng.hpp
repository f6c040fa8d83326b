#pragma once
// Deterministic splittable RNG used by all sampling code paths.
//
// SplitMix64 gives reproducible streams across platforms; parallel sampling
// derives an independent stream per sample index so that results do not
// depend on thread scheduling.

#include <cstdint>

namespace sdesign {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, n) by rejection (n > 0).
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * (~0ULL / n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }
};

// Stream for the k-th sample of a seeded run: mixes seed and index through
// one SplitMix64 step so neighbouring indices decorrelate.
inline SplitMix64 derived_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x8e9805a5e8e5c581ULL + index * 0xd1342543de82ef95ULL));
    return SplitMix64(mix.next());
}

}  // namespace sdesign
