#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "swb/rng.hpp"

namespace swb {

// Rule for choosing among argmax-tied arms. Uniform is the faithful mode;
// Fixed and Sequence force specific tie outcomes so that conditional events
// ("the tie is lost") can be realized deterministically.
class TieResolver {
  public:
    enum class Kind { Uniform, Fixed, Sequence };

    static TieResolver uniform() { return TieResolver(Kind::Uniform); }
    static TieResolver fixed(int arm) {
        TieResolver r(Kind::Fixed);
        r.fixed_arm_ = arm;
        return r;
    }
    // Entries are consumed one per consulted tie; exhaustion falls back to Uniform.
    static TieResolver sequence(std::vector<int> arms) {
        TieResolver r(Kind::Sequence);
        r.seq_ = std::move(arms);
        return r;
    }

    Kind kind() const { return kind_; }

    // tied: ascending arm indices, size >= 1. Consumes from `ties` only when
    // a uniform draw is actually needed. Fixed/Sequence arms must be members
    // of the tied set when consulted.
    int pick(const std::vector<int>& tied, std::mt19937_64& ties);

  private:
    explicit TieResolver(Kind k) : kind_(k) {}

    Kind kind_;
    int fixed_arm_ = 0;
    std::vector<int> seq_;
    std::size_t next_ = 0;
};

} // namespace swb
