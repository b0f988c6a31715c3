#pragma once

#include <cstdint>

namespace qrmark {

// Counter-based pseudo-random generator. Every draw is a pure function of
// (seed, stream, counter), so any component can be replayed in isolation and
// selections reproduce across platforms and languages bit-for-bit.
//
// The mixer is the splitmix64 finalizer applied to a keyed counter.

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// One 64-bit word at position (seed, stream, counter).
constexpr uint64_t rng_word(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t key = mix64(seed + kGolden * (stream + 1));
    return mix64(key ^ (counter * 0xd6e8feb86659fd93ULL) ^ (counter >> 32));
}

// Unbiased-enough uniform draw in [0, bound) via 128-bit multiply-shift.
constexpr uint64_t rng_below(uint64_t seed, uint64_t stream, uint64_t counter, uint64_t bound) {
    unsigned __int128 wide = static_cast<unsigned __int128>(rng_word(seed, stream, counter)) * bound;
    return static_cast<uint64_t>(wide >> 64);
}

// Uniform double in [0, 1).
constexpr double rng_unit(uint64_t seed, uint64_t stream, uint64_t counter) {
    return static_cast<double>(rng_word(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Stateful convenience wrapper over the counter-based core.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    uint64_t next() { return rng_word(seed_, stream_, counter_++); }
    uint64_t below(uint64_t bound) { return rng_below(seed_, stream_, counter_++, bound); }
    double unit() { return rng_unit(seed_, stream_, counter_++); }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

} // namespace qrmark
