#pragma once

#include <cstdint>
#include <random>

namespace swb {

// Seed used by every entry point when the caller does not pass one.
inline constexpr std::uint64_t kDefaultSeed = 1729;

// splitmix64 finalizer; mixes one 64-bit key into an accumulator.
inline std::uint64_t mix64(std::uint64_t acc, std::uint64_t key) {
    std::uint64_t x = acc + 0x9e3779b97f4a7c15ull * (key + 0x632be59bd9b4e019ull);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { Policy = 0, Reward = 1, Tie = 2 };

// Splittable stream derivation: every (seed, replication, stream, segment)
// tuple owns an independent engine. Restarted runs bump `segment` at each
// restart boundary so a sub-run replays exactly as a standalone episode
// launched with the matching segment value.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t replication,
                                   Stream stream, std::uint64_t segment = 0) {
    std::uint64_t acc = mix64(0x8f1bbcdcbfa53e0bull, seed);
    acc = mix64(acc, replication);
    acc = mix64(acc, static_cast<std::uint64_t>(stream));
    acc = mix64(acc, segment);
    return std::mt19937_64(acc);
}

// One draw in [0,1); 53 random bits, strictly below 1.
inline double canonical(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform arm in 1..K.
inline int uniform_arm(std::mt19937_64& g, int K) {
    int a = 1 + static_cast<int>(canonical(g) * K);
    return a > K ? K : a;
}

} // namespace swb
