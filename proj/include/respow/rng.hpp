#pragma once

#include <cstdint>
#include <initializer_list>

namespace respow {

// SplitMix64 finalizer. Full 64-bit avalanche, fixed constants.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Minimal counter-style generator with a fully specified sequence, so a
// stream keyed by (seed) reproduces bit-for-bit on any platform and under
// any thread count. Used instead of std:: distributions, whose output is
// implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform double in the open interval (0,1): 53-bit resolution offset
    // by half an ulp so 0 and 1 are never produced.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream key from a master seed and an index path
// (cell coordinates, replicate index, class tag, ...). The mixing chain is
// fixed; callers rely on it for replicate-level determinism.
inline std::uint64_t derive_stream(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t v : path) {
        h = mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    }
    return h;
}

} // namespace respow
