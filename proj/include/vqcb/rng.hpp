#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace vqcb {

// Deterministic sampling helpers built directly on mt19937_64 output.
// The standard <random> distributions are implementation-defined, which
// would break the bit-for-bit reproducibility contract across toolchains.

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

// Standard normal via Box-Muller.
inline double normal_unit(std::mt19937_64& rng) {
    double u1 = uniform_unit(rng);
    double u2 = uniform_unit(rng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Uniform integer in [0, n). Modulo bias is ~n/2^64, irrelevant here.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

// Fisher-Yates shuffle using uniform_index.
template <typename T>
void shuffle_inplace(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace vqcb
