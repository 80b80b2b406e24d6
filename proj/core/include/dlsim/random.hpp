#pragma once

// Random sources. Every sampler takes a caller-owned generator producing
// uniform 64-bit words, so streams are reproducible from a seed and each
// thread can own its own stream.

#include <cstdint>
#include <random>

#include "dlsim/numtheory.hpp"

namespace dlsim {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection on ceil(log2 n) random bits.
Integer uniform_below(const Integer& n, Rng& rng);

/// Uniform integer in [lo, hi]; requires lo <= hi.
Integer uniform_between(const Integer& lo, const Integer& hi, Rng& rng);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

}  // namespace dlsim
