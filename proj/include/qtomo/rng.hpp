#ifndef QTOMO_RNG_HPP
#define QTOMO_RNG_HPP

#include <cstdint>

namespace qtomo {

/// splitmix64 mixing step (Steele, Lea, Flood 2014). Used both as the
/// stream generator and as the integer hash for substream derivation,
/// so sampled data are bit-identical across platforms.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_u64(std::uint64_t x) {
    return splitmix64_next(x);
}

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

/// Deterministic substream: seed XOR hash(tag). Distinct tags give
/// statistically independent streams.
inline Rng substream(std::uint64_t seed, std::uint64_t tag) {
    return Rng(seed ^ hash_u64(tag));
}

} // namespace qtomo

#endif
