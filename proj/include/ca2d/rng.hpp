#pragma once

#include <cstdint>

namespace ca2d {

// Counter-based generator: every output is a pure function of
// (seed, stream, counter), so parallel schedules cannot change results.
//
// mix64 is the SplitMix64 finalizer; rand64 chains it once per key part:
//
//     rand64(seed, stream, counter) = mix64(mix64(mix64(seed) + stream) + counter)
//
// Frozen test vectors (see tests/test_rng.cpp and README):
//     mix64(0)          = 0xe220a8397b1dcdaf
//     mix64(1)          = 0x910a2dec89025cc1
//     rand64(0, 0, 0)   = 0x238275bc38fcbe91
//     rand64(7, 1, 42)  = 0xf7d9966af6b393a8

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t rand64(uint64_t seed, uint64_t stream, uint64_t counter) {
    return mix64(mix64(mix64(seed) + stream) + counter);
}

// Uniform double in [0, 1), 53 mantissa bits.
inline double unit_double(uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

inline double rand_unit(uint64_t seed, uint64_t stream, uint64_t counter) {
    return unit_double(rand64(seed, stream, counter));
}

} // namespace ca2d
