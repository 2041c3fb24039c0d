#pragma once

#include <cstdint>

#include "flmm/field.hpp"

namespace flmm {

constexpr u64 kDefaultSeed = 1;

namespace detail {

inline u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Derives an independent child seed from (seed, index). The solver hands a
/// child seed to each family element so that parallel and sequential runs
/// consume randomness identically.
inline u64 child_seed(u64 seed, u64 index) {
    return detail::splitmix64(seed ^ detail::splitmix64(index + 1));
}

inline Rng make_rng(u64 seed) { return Rng(seed); }

}  // namespace flmm
