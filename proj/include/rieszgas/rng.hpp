#ifndef RIESZGAS_RNG_HPP
#define RIESZGAS_RNG_HPP

#include <cstdint>
#include <random>

namespace rieszgas {

/// SplitMix64 step; used to derive independent stream seeds from one
/// 64-bit master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// A 64-bit seeded generator for stream `stream` of master seed `seed`.
/// Distinct streams are decorrelated through SplitMix64 expansion, so
/// concurrent chains can share one master seed.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    std::uint64_t c = splitmix64(s);
    std::uint64_t d = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

} // namespace rieszgas

#endif
