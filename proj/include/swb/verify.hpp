#pragma once

#include <optional>
#include <string>

#include "swb/bounds.hpp"
#include "swb/forge.hpp"
#include "swb/sim.hpp"

namespace swb {

enum class TheoremId { EtcT1, EgT2, UcbT3, UcbC1, RestartT4, RestartT5, RestartC2 };

std::string theorem_name(TheoremId id); // "ETC_T1", "EG_T2", ...
std::optional<TheoremId> theorem_from_string(const std::string& s);

struct CertifyParams {
    long T = 1000;
    int K = 2;
    int m = 20;       // ETC
    double eps = 0.1; // eps-greedy
    int d = 4;        // restarts
    int gamma = 2;    // changes
    double a = 0.0;   // RestartT5 linear-rate constant; 0 -> 0.07*(1-1/K)
};

// Machine-checkable record that a concrete instance makes a policy's
// measured (or exactly computed) regret meet a lower-bound expression.
struct Certificate {
    TheoremId theorem = TheoremId::EtcT1;
    nlohmann::json params;
    double bound = 0.0;
    std::optional<double> exact;
    std::optional<double> measured_mean;
    std::optional<double> measured_stderr;
    long reps = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

nlohmann::json to_json(const Certificate& c);

// Sum_{t=0}^{T-1} (1 - eps/K)^t, the expected capped waiting time until a
// rate-(eps/K) event fires. eps = 0 returns T (the limit).
double eg_tau_closed_form(long T, int K, double eps);

// (1-x)^r <= 1/(1+rx) on the usage domain x in (0,1], r >= 0.
bool bernoulli_power_check(double x, long r);

// Empirical crossover-time variance against the (K/eps)T bound, with a
// 3-sigma allowance for the variance estimate itself.
bool eg_var_bound_check(long T, int K, double eps, double sample_var,
                        double sample_var_stderr = 0.0);

// Rounds past break_round until target_arm is first pulled, capped at cap.
// The final segment's rewards extend beyond T so the cap may exceed the
// horizon; the policy must not read its horizon for this to be meaningful
// (eps-greedy, anytime UCB).
long waiting_time_to_arm(const Instance& inst, const PolicySpec& spec, int target_arm,
                         long break_round, long cap, std::uint64_t seed,
                         std::uint64_t replication);

// Rounds past break_round until empirical_mean(arm 1) <= empirical_mean(arm 2),
// uncapped apart from the safety cap. Same extension rule as above.
long crossover_time(const Instance& inst, const PolicySpec& spec, long break_round,
                    long cap, std::uint64_t seed, std::uint64_t replication);

// Builds the theorem's instance(s), runs exact evaluation where available
// and Monte Carlo otherwise, and fills the certificate. Pass rule: an exact
// value must meet the bound outright; a measured value must meet it within
// 3 standard errors, and equality-type checks must match the exact value
// within 3 standard errors.
Certificate certify(TheoremId id, const CertifyParams& p, long reps, std::uint64_t seed);

} // namespace swb
