#pragma once

#include <random>

#include "swb/rng.hpp"

namespace swb {

// Per-round reward distribution of one arm. Rewards live in [0,1].
struct RewardSpec {
    enum class Kind { Deterministic, Bernoulli };

    Kind kind = Kind::Deterministic;
    double value = 0.0; // deterministic reward, or Bernoulli success probability

    static RewardSpec det(double v) { return {Kind::Deterministic, v}; }
    static RewardSpec bernoulli(double p) { return {Kind::Bernoulli, p}; }

    friend bool operator==(const RewardSpec&, const RewardSpec&) = default;
};

inline double expected_reward(const RewardSpec& s) { return s.value; }

// Deterministic specs consume nothing from the stream; Bernoulli consumes one draw.
inline double sample_reward(const RewardSpec& s, std::mt19937_64& rewards) {
    if (s.kind == RewardSpec::Kind::Deterministic) return s.value;
    return canonical(rewards) < s.value ? 1.0 : 0.0;
}

} // namespace swb
