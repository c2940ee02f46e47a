#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "swb/tie.hpp"

namespace swb {

// Which algorithm with which parameters. Restarted wraps exactly one
// non-restarted inner policy (nesting depth <= 1).
struct PolicySpec {
    enum class Kind { Etc, EpsGreedy, UcbKnownHorizon, UcbAnytime, Restarted };

    Kind kind = Kind::UcbKnownHorizon;
    int explore_rounds = 0; // ETC: pulls per arm before committing
    double eps = 0.0;       // EpsGreedy: exploration probability
    int restarts = 1;       // Restarted: number of equal sub-horizons
    std::shared_ptr<const PolicySpec> inner; // Restarted only

    static PolicySpec etc(int m);
    static PolicySpec eps_greedy(double eps);
    static PolicySpec ucb_known();
    static PolicySpec ucb_anytime();
    static PolicySpec restarted(PolicySpec inner, int d);
};

// Designation strings: "etc:m=<int>", "eps-greedy:eps=<num>", "ucb-known",
// "ucb-anytime", "restart:d=<int>:<inner>".
PolicySpec parse_policy(const std::string& designation);
std::string format_policy(const PolicySpec& spec);

// Evolving per-episode state: pull counts n_k, reward sums, current round.
// The horizon feeds ETC's commit schedule, the known-horizon UCB index and
// restart segmentation; the anytime UCB selection rule never reads it.
struct PolicyState {
    PolicySpec spec;
    int K = 0;
    long t = 1;
    long horizon = 0;
    std::vector<long> counts;
    std::vector<double> sums;
    int committed_arm = 0; // ETC: 0 until committed
    int last_selected = 0;
    int restart_segment = 0;                // 0-based
    std::unique_ptr<PolicyState> inner;     // Restarted: fresh per segment
};

// Fresh state, t = 1, all counts zero. Throws std::invalid_argument on
// parameter violations (K < 2, horizon < 1, ETC schedule not fitting, ...).
PolicyState init_policy(const PolicySpec& spec, int K, long horizon);

// One decision. Argmax ties go through the resolver; the policy stream
// feeds the eps-greedy coin and exploration draw, the tie stream feeds
// uniform tie breaks. Throws std::out_of_range once the episode is exhausted.
int select_arm(PolicyState& state, TieResolver& tie, std::mt19937_64& policy,
               std::mt19937_64& ties);

// Record the reward of the arm that select_arm returned and advance t.
// Restarted states reset their inner policy when t enters a new segment.
void observe(PolicyState& state, int arm, double reward);

// mean + sqrt(2*logterm/n); unpulled arms get +infinity.
double ucb_index(double mean, long n, double logterm);

// sums_k / n_k. Throws std::domain_error for an unpulled arm.
double empirical_mean(const PolicyState& state, int arm);

// First round of restart segment i (1-based, i in 1..d): floor((i-1)*T/d)+1.
long restart_segment_start(int d, long horizon, int i);
// Length of restart segment i.
long restart_segment_length(int d, long horizon, int i);
// 0-based segment index containing round t.
int restart_segment_of(int d, long horizon, long t);

} // namespace swb
