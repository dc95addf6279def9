// Seeded randomness helpers. std::mt19937_64 is fully specified by the
// standard; the distributions here are hand-rolled so streams are identical
// across standard libraries.

#pragma once

#include <cstdint>
#include <random>

namespace ogcb::rng {

using Engine = std::mt19937_64;

// Derives an independent stream seed (splitmix64 over seed ^ stream tag).
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

// Uniform in [0, 1), 53-bit resolution.
double uniform01(Engine& eng);

double uniform(Engine& eng, double lo, double hi);
float uniformf(Engine& eng, float lo, float hi);

// Uniform integer in [lo, hi], inclusive, unbiased.
std::int64_t uniform_int(Engine& eng, std::int64_t lo, std::int64_t hi);

// Standard normal via Box-Muller (two uniforms per draw).
double normal(Engine& eng);

} // namespace ogcb::rng
