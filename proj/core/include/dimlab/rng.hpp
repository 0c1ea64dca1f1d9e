#pragma once

#include <random>

#include "dimlab/types.hpp"

namespace dimlab {

/// Uniform double in [0, 1) from the top 53 bits, independent of the standard library.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform in the square [−1, 1) + i[−1, 1).
inline cplx uniform_square(std::mt19937_64& rng) {
    const double re = 2.0 * uniform01(rng) - 1.0;
    const double im = 2.0 * uniform01(rng) - 1.0;
    return {re, im};
}

}  // namespace dimlab
