#pragma once

#include <cstdint>
#include <random>

#include "floorforge/numeric.hpp"

namespace fftest {

using floorforge::BigInt;
using floorforge::Rational;

inline std::int64_t random_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Nonnegative value with a uniformly random bit length in [0, max_bits],
// so small and huge magnitudes both show up.
inline BigInt random_bigint(std::mt19937_64& rng, unsigned max_bits) {
    unsigned bits = static_cast<unsigned>(random_int(rng, 0, max_bits));
    if (bits == 0) return 0;
    BigInt n = 0;
    for (unsigned got = 0; got < bits; got += 64) n = (n << 64) | BigInt(rng());
    n &= (BigInt(1) << bits) - 1;
    n |= BigInt(1) << (bits - 1);
    return n;
}

inline Rational random_rational(std::mt19937_64& rng, std::int64_t num_mag,
                                std::int64_t den_max) {
    return Rational(random_int(rng, -num_mag, num_mag), random_int(rng, 1, den_max));
}

}  // namespace fftest
