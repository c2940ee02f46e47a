#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "swb/instance.hpp"
#include "swb/policy.hpp"

namespace swb {

struct StepRecord {
    long round = 0;
    int arm = 0;
    double reward = 0.0; // realized
};

// One episode's record. Regret is accounted in expected-reward units of the
// pulled arm (exact for deterministic instances, unbiased for Bernoulli),
// with rounds <= init_rounds contributing zero. Traces hold the state after
// each round's update.
struct Trajectory {
    long T = 0;
    int K = 0;
    long init_rounds = 0;
    std::vector<StepRecord> steps;
    double realized_regret = 0.0;

    bool traced = false;
    std::vector<int> oracle_arms;
    std::vector<double> oracle_means;
    std::vector<double> step_regrets;
    std::vector<double> cum_regrets;
    std::vector<std::vector<double>> means;   // [round-1][arm-1], NaN while unpulled
    std::vector<std::vector<double>> indices; // UCB runs only, +inf while unpulled
};

struct EpisodeOptions {
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t replication = 0;
    // Stream segment offset; a restarted run's segment i replays standalone
    // when launched with stream_segment_base = i.
    std::uint64_t stream_segment_base = 0;
    bool trace = false;
    long policy_horizon = 0; // 0: the instance horizon
};

// Deterministic for fixed (instance, spec, options, tie mode).
Trajectory run_episode(const Instance& inst, const PolicySpec& spec,
                       const EpisodeOptions& opts, TieResolver tie = TieResolver::uniform());

// Recomputes the regret total from the step records; equals the stored total
// bit for bit. Throws on K/T mismatch.
double realized_regret(const Instance& inst, const Trajectory& traj);

struct RegretReport {
    double mean = 0.0;
    double std_error = 0.0;
    long reps = 0;
    std::uint64_t seed = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

enum class Exec { Serial, OpenMp };

// Data-parallel replication kernel. Each replication owns its streams via
// (seed, rep); results land in replication order, so Serial and OpenMp
// produce identical vectors regardless of schedule. f: (long rep) -> double.
template <class F>
std::vector<double> replicate(long reps, Exec exec, F&& f) {
    std::vector<double> out(static_cast<std::size_t>(reps));
    if (exec == Exec::Serial) {
        for (long r = 0; r < reps; ++r) out[static_cast<std::size_t>(r)] = f(r);
    } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (long r = 0; r < reps; ++r) out[static_cast<std::size_t>(r)] = f(r);
    }
    return out;
}

std::vector<double> replicate_regret(const Instance& inst, const PolicySpec& spec,
                                     long reps, std::uint64_t seed, Exec exec);

// Order-deterministic reduction (Kahan mean, two-pass variance).
RegretReport summarize(const std::vector<double>& samples, std::uint64_t seed);

// Monte-Carlo estimate of expected regret. reps >= 2.
RegretReport monte_carlo_regret(const Instance& inst, const PolicySpec& spec, long reps,
                                std::uint64_t seed, Exec exec = Exec::OpenMp);

// Exact expected regret of the forged UCB instance, (1-1/K)(T-Kc)(1-delta),
// verified by running all K forced tie branches: the arm-1 branch yields 0
// post-break regret, every other branch yields (T-Kc)(1-delta).
struct UcbForgeParams;
double exact_ucb_regret(const UcbForgeParams& params,
                        PolicySpec::Kind variant = PolicySpec::Kind::UcbKnownHorizon);

// Tie sequence that walks the pre-break water-filling phase deterministically
// (lowest tied arm, c blocks) and hands the breakpoint tie to `branch`.
std::vector<int> forced_break_sequence(long c, int K, int branch);

// CSV schema: round, arm, reward, oracle_arm, oracle_mean, step_regret,
// cum_regret, mean_1..mean_K and, for UCB runs, index_1..index_K. Unpulled
// indices serialize as "inf", undefined means as "nan".
void write_trace_csv(std::ostream& os, const Trajectory& traj);

// Moment summaries for certification gates.
struct SampleStats {
    long n = 0;
    double mean = 0.0;
    double var = 0.0;          // unbiased sample variance
    double mean_std_error = 0.0;
    double var_std_error = 0.0; // from the fourth central moment
};
SampleStats sample_stats(const std::vector<double>& xs);

nlohmann::json to_json(const RegretReport& r);

} // namespace swb
