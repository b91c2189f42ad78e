// Counter-based random streams. Every draw is a pure function of
// (seed, stream, counter), so initialization is reproducible bit-for-bit
// regardless of evaluation order or thread count.
#pragma once

#include <cstdint>

namespace perikon {

namespace rng {

inline std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t k = mix(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
    return mix(k ^ mix(counter + 0x632be59bd9b4e019ull));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(draw(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Stream ids used by the library; fixed so that results never depend on
// call ordering.
enum Stream : std::uint64_t {
    kPhaseAssignment = 1,
    kPoreDraw = 2,
};

}  // namespace rng

}  // namespace perikon
