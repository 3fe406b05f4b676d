#pragma once

#include <cstdint>
#include <random>

#include "mphase/grid.hpp"

namespace mphase {

/// Uniform in [0,1) from the top 53 bits; identical output on every platform.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline GridFunction random_field(std::mt19937_64& rng, const Grid& g, double lo, double hi) {
    GridFunction u(static_cast<std::size_t>(g.cells()));
    for (double& v : u) v = uniform(rng, lo, hi);
    return u;
}

} // namespace mphase
