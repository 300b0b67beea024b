#pragma once

#include <cstdint>

namespace catqec {

// splitmix64 finalizer, used as the mixing core of the counter RNG.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based RNG: every draw is a pure hash of (seed, shot, round, layer,
// element). Sampling is reproducible and independent of evaluation order, so
// noise realizations don't shift when unrelated parts of a schedule change.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed = 0) : seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t u64(uint64_t shot, uint32_t round, uint32_t layer, uint32_t element) const {
        uint64_t x = splitmix64(seed_ ^ 0x243f6a8885a308d3ull);
        x = splitmix64(x ^ shot);
        x = splitmix64(x ^ ((uint64_t(round) << 32) | layer));
        x = splitmix64(x ^ element);
        return x;
    }

    // uniform in [0, 1)
    double uniform(uint64_t shot, uint32_t round, uint32_t layer, uint32_t element) const {
        return double(u64(shot, round, layer, element) >> 11) * 0x1.0p-53;
    }

private:
    uint64_t seed_;
};

} // namespace catqec
