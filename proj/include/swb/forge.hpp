#pragma once

#include <utility>

#include "swb/instance.hpp"

namespace swb {

// Parameters of the UCB fooling instance: after c pulls per arm on all-zero
// rewards, the switch to (1, delta, ..., delta) at round Kc+1 locks any
// non-arm-1 tie winner in for the rest of the horizon.
struct UcbForgeParams {
    long T = 0;
    int K = 0;
    double alpha = 0.0;  // sqrt(2 ln T)
    long c = 0;          // pre-break pulls per arm, integer in the admissible interval
    double delta = 0.0;  // post-break suboptimal reward, alpha/sqrt(c)
    long breakpoint = 0; // K*c + 1
};

double ucb_alpha(double T);

// Closed-form admissible interval for c: [(T*alpha/2K)^(2/3), (T*alpha/K)^(2/3)].
// Requires T > 4K ln T; the interval then always contains an integer.
std::pair<double, double> ucb_c_interval(long T, int K);

// True iff the lock-in inequality
//   delta*x/(c+x) + sqrt(2L/(c+x)) > sqrt(2L/c)
// holds strictly for every x in 1..T-Kc, with L = ln T for the known-horizon
// index and L = ln(Kc+x) for the anytime index.
bool check_inertia_condition(long c, double delta, long T, int K, bool known_horizon);

// All-zero rewards for Kc rounds, then (1, delta, ..., delta). c is the
// smallest admissible integer; delta = alpha/sqrt(c) < 1. The returned
// params satisfy check_inertia_condition in both horizon modes.
std::pair<Instance, UcbForgeParams> forge_ucb(long T, int K);

// (0,...,0,1) for the mK exploration rounds, then (1,0,...,0). Requires a
// nonempty commit phase (mK < T).
Instance forge_etc(long T, int K, int m);

// (1,0,...,0) for the K initialization rounds (excluded from regret), then
// (0,1,0,...,0).
Instance forge_eg_early(long T, int K);

// (0.5,0,...,0) for the first T/2 rounds, then (0.5,1,0,...,0). T must be
// even and at least 2K. Initialization is the policy's own round-robin, so
// init_rounds stays 0.
Instance forge_eg_mid(long T, int K);

enum class AdversaryKind { Ucb, Etc, EgMid };

// d equal restart segments; the first min(d,gamma) each carry a re-based
// copy of the selected single-change instance, the remaining rounds continue
// the final adversarial reward vector (stationary). gamma = 0 yields an
// all-zero stationary instance.
Instance forge_restart_composite(long T, int K, int d, int gamma, AdversaryKind kind,
                                 int etc_m = 10);

} // namespace swb
