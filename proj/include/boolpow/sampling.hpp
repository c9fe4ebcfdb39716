// Seeded generators for test inputs and CLI demos.
#pragma once

#include <cstdint>
#include <random>

#include "boolpow/homeo.hpp"
#include "boolpow/power.hpp"

namespace boolpow {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);  // inclusive bounds
bool coin(Rng& rng);

// Random clopen of 2^omega built from cylinders of length <= depth.
Clopen random_clopen(Rng& rng, int depth);

TailClopen random_tail_clopen(const PointContext& ctx, Rng& rng, int max_threshold = 3,
                              int max_period = 3);
// A random set with the same type and emptiness pattern as c (and its complement).
TailClopen random_same_type(const TailClopen& c, Rng& rng, int max_threshold = 3,
                            int max_period = 3);
// Product of a few random point-fixing homeomorphisms.
EPHomeo random_homeo(const PointContext& ctx, Rng& rng, int rounds = 2);
// Random point-fixing homeomorphism carrying each block onto itself.
EPHomeo random_block_homeo(const std::vector<TailClopen>& blocks, Rng& rng);

// Element whose cells are the words of length `depth`, labels uniform
// except where a distinguished point forces its filter.
PowerElement random_element(const PowerContext& ctx, Rng& rng, int depth);

}  // namespace boolpow
