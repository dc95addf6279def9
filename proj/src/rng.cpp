#include "ogcb/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ogcb::rng {

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double uniform(Engine& eng, double lo, double hi) {
    return lo + uniform01(eng) * (hi - lo);
}

float uniformf(Engine& eng, float lo, float hi) {
    return static_cast<float>(uniform(eng, lo, hi));
}

std::int64_t uniform_int(Engine& eng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) // full 64-bit range
        return static_cast<std::int64_t>(eng());
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

double normal(Engine& eng) {
    double u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    if (u1 <= 0.0)
        u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace ogcb::rng
