#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swb/reward.hpp"

namespace swb {

// Rounds are 1-based; segment bounds are inclusive.
struct Segment {
    long start = 0;
    long end = 0;
    std::vector<RewardSpec> arms;

    friend bool operator==(const Segment&, const Segment&) = default;
};

// A piecewise-stationary bandit instance: K reward processes over rounds
// 1..T, constant within each segment. The first init_rounds rounds are
// excluded from regret accounting (the policy still observes them).
struct Instance {
    int K = 0;
    long T = 0;
    long init_rounds = 0;
    std::vector<Segment> segments;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidationReport {
    bool ok = false;
    int breakpoints = 0;
    std::vector<std::string> violations;
};

// Collects every violation instead of throwing. When max_breakpoints is
// given, the instance must also fit in the class of instances with at most
// that many distribution changes.
ValidationReport validate_instance(const Instance& inst,
                                   std::optional<int> max_breakpoints = std::nullopt);

// Segment containing round t. Throws std::out_of_range for t outside [1,T].
const Segment& segment_at(const Instance& inst, long t);

// Smallest arm index attaining the maximal expected reward at round t.
int optimal_arm(const Instance& inst, long t);

// Maximal expected reward at round t.
double oracle_mean(const Instance& inst, long t);

// Sum over t in [from,to] of the maximal expected reward, skipping rounds
// <= init_rounds. Compensated summation, same order as the episode ledger.
double oracle_cumulative_reward(const Instance& inst, long from, long to);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

// Kahan summation; episode ledgers and replication reducers share it so
// recomputation reproduces stored totals bit for bit.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace swb
