#pragma once

#include <cstdint>

namespace qmvt {

// Counter-based uniform deviates: the i-th draw is a pure function of
// (seed, stream, i), so any draw can be reproduced without replaying the
// ones before it and independent consumers can share a seed by taking
// distinct streams. The mixer is the SplitMix64 finalizer, which passes
// the usual statistical batteries for this kind of use.
//
// The exact bit stream is a stable contract within one build of this
// library: identical (seed, stream, index) always yields the identical
// deviate.

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}
} // namespace detail

// Uniform deviate in the open interval (0,1).
inline double uniform_open(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t key = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    std::uint64_t z = detail::mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace qmvt
