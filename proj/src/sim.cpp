#include "swb/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "swb/forge.hpp"

namespace swb {

namespace {

// Selection state that drives traces: the inner policy for restarted runs.
const PolicyState& active_state(const PolicyState& st) {
    return st.spec.kind == PolicySpec::Kind::Restarted ? *st.inner : st;
}

bool is_ucb(const PolicySpec& spec) {
    PolicySpec::Kind k =
        spec.kind == PolicySpec::Kind::Restarted ? spec.inner->kind : spec.kind;
    return k == PolicySpec::Kind::UcbKnownHorizon || k == PolicySpec::Kind::UcbAnytime;
}

} // namespace

Trajectory run_episode(const Instance& inst, const PolicySpec& spec,
                       const EpisodeOptions& opts, TieResolver tie) {
    ValidationReport vr = validate_instance(inst);
    if (!vr.ok) throw std::invalid_argument("invalid instance: " + vr.violations.front());

    long horizon = opts.policy_horizon > 0 ? opts.policy_horizon : inst.T;
    PolicyState st = init_policy(spec, inst.K, horizon);

    int d = spec.kind == PolicySpec::Kind::Restarted ? spec.restarts : 1;
    int stream_seg = 0;
    auto open_streams = [&](int seg) {
        std::uint64_t s = opts.stream_segment_base + static_cast<std::uint64_t>(seg);
        return std::array<std::mt19937_64, 3>{
            make_stream(opts.seed, opts.replication, Stream::Policy, s),
            make_stream(opts.seed, opts.replication, Stream::Reward, s),
            make_stream(opts.seed, opts.replication, Stream::Tie, s)};
    };
    auto streams = open_streams(0);

    Trajectory traj;
    traj.T = inst.T;
    traj.K = inst.K;
    traj.init_rounds = inst.init_rounds;
    traj.steps.reserve(static_cast<std::size_t>(inst.T));
    traj.traced = opts.trace;
    bool ucb_trace = opts.trace && is_ucb(spec);
    if (opts.trace) {
        traj.oracle_arms.reserve(static_cast<std::size_t>(inst.T));
        traj.oracle_means.reserve(static_cast<std::size_t>(inst.T));
        traj.step_regrets.reserve(static_cast<std::size_t>(inst.T));
        traj.cum_regrets.reserve(static_cast<std::size_t>(inst.T));
        traj.means.reserve(static_cast<std::size_t>(inst.T));
        if (ucb_trace) traj.indices.reserve(static_cast<std::size_t>(inst.T));
    }

    KahanSum regret;
    std::size_t seg_idx = 0;
    for (long t = 1; t <= inst.T; ++t) {
        if (d > 1) {
            int seg_now = restart_segment_of(d, horizon, t);
            if (seg_now != stream_seg) {
                stream_seg = seg_now;
                streams = open_streams(seg_now);
            }
        }
        while (t > inst.segments[seg_idx].end) ++seg_idx;
        const Segment& seg = inst.segments[seg_idx];

        int arm = select_arm(st, tie, streams[0], streams[2]);
        const RewardSpec& rs = seg.arms[static_cast<std::size_t>(arm - 1)];
        double reward = sample_reward(rs, streams[1]);
        observe(st, arm, reward);

        double best = expected_reward(seg.arms[0]);
        for (std::size_t k = 1; k < seg.arms.size(); ++k)
            best = std::max(best, expected_reward(seg.arms[k]));
        double step = t <= inst.init_rounds ? 0.0 : best - expected_reward(rs);
        if (t > inst.init_rounds) regret.add(step);

        traj.steps.push_back({t, arm, reward});
        if (opts.trace) {
            int oarm = 1;
            double omean = expected_reward(seg.arms[0]);
            for (int k = 2; k <= inst.K; ++k) {
                double m = expected_reward(seg.arms[static_cast<std::size_t>(k - 1)]);
                if (m > omean) {
                    omean = m;
                    oarm = k;
                }
            }
            traj.oracle_arms.push_back(oarm);
            traj.oracle_means.push_back(omean);
            traj.step_regrets.push_back(step);
            traj.cum_regrets.push_back(regret.sum);

            const PolicyState& sel = active_state(st);
            std::vector<double> mrow(static_cast<std::size_t>(inst.K));
            for (int k = 0; k < inst.K; ++k) {
                auto i = static_cast<std::size_t>(k);
                mrow[i] = sel.counts[i] > 0
                              ? sel.sums[i] / static_cast<double>(sel.counts[i])
                              : std::numeric_limits<double>::quiet_NaN();
            }
            traj.means.push_back(std::move(mrow));
            if (ucb_trace) {
                double logterm =
                    sel.spec.kind == PolicySpec::Kind::UcbKnownHorizon
                        ? std::log(static_cast<double>(sel.horizon))
                        : std::log(static_cast<double>(std::max(sel.t - 1, 1L)));
                std::vector<double> irow(static_cast<std::size_t>(inst.K));
                for (int k = 0; k < inst.K; ++k) {
                    auto i = static_cast<std::size_t>(k);
                    double mean = sel.counts[i] > 0
                                      ? sel.sums[i] / static_cast<double>(sel.counts[i])
                                      : 0.0;
                    irow[i] = ucb_index(mean, sel.counts[i], logterm);
                }
                traj.indices.push_back(std::move(irow));
            }
        }
    }
    traj.realized_regret = regret.sum;
    return traj;
}

double realized_regret(const Instance& inst, const Trajectory& traj) {
    if (traj.K != inst.K || traj.T != inst.T)
        throw std::invalid_argument("trajectory does not match the instance's K/T");
    KahanSum regret;
    std::size_t seg_idx = 0;
    for (const StepRecord& rec : traj.steps) {
        if (rec.round < 1 || rec.round > inst.T || rec.arm < 1 || rec.arm > inst.K)
            throw std::invalid_argument("trajectory step out of range");
        if (rec.round <= inst.init_rounds) continue;
        while (rec.round > inst.segments[seg_idx].end) ++seg_idx;
        const Segment& seg = inst.segments[seg_idx];
        double best = expected_reward(seg.arms[0]);
        for (std::size_t k = 1; k < seg.arms.size(); ++k)
            best = std::max(best, expected_reward(seg.arms[k]));
        regret.add(best - expected_reward(seg.arms[static_cast<std::size_t>(rec.arm - 1)]));
    }
    return regret.sum;
}

std::vector<double> replicate_regret(const Instance& inst, const PolicySpec& spec,
                                     long reps, std::uint64_t seed, Exec exec) {
    // Fail on bad inputs here, before the parallel region.
    ValidationReport vr = validate_instance(inst);
    if (!vr.ok) throw std::invalid_argument("invalid instance: " + vr.violations.front());
    init_policy(spec, inst.K, inst.T);
    return replicate(reps, exec, [&](long rep) {
        EpisodeOptions o;
        o.seed = seed;
        o.replication = static_cast<std::uint64_t>(rep);
        return run_episode(inst, spec, o).realized_regret;
    });
}

RegretReport summarize(const std::vector<double>& samples, std::uint64_t seed) {
    if (samples.size() < 2)
        throw std::invalid_argument("monte carlo summaries need at least 2 replications");
    SampleStats s = sample_stats(samples);
    RegretReport r;
    r.mean = s.mean;
    r.std_error = s.mean_std_error;
    r.reps = s.n;
    r.seed = seed;
    r.ci_lo = r.mean - 1.96 * r.std_error;
    r.ci_hi = r.mean + 1.96 * r.std_error;
    return r;
}

RegretReport monte_carlo_regret(const Instance& inst, const PolicySpec& spec, long reps,
                                std::uint64_t seed, Exec exec) {
    return summarize(replicate_regret(inst, spec, reps, seed, exec), seed);
}

std::vector<int> forced_break_sequence(long c, int K, int branch) {
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(c) * (K - 1) + 1);
    for (long b = 0; b < c; ++b)
        for (int k = 1; k < K; ++k) seq.push_back(k);
    seq.push_back(branch);
    return seq;
}

double exact_ucb_regret(const UcbForgeParams& params, PolicySpec::Kind variant) {
    bool known = variant == PolicySpec::Kind::UcbKnownHorizon;
    if (variant != PolicySpec::Kind::UcbKnownHorizon &&
        variant != PolicySpec::Kind::UcbAnytime)
        throw std::invalid_argument("exact_ucb_regret covers the two UCB variants");
    if (!check_inertia_condition(params.c, params.delta, params.T, params.K, known))
        throw std::invalid_argument("lock-in condition fails for these parameters");

    auto forged = forge_ucb(params.T, params.K);
    const Instance& inst = forged.first;
    if (forged.second.c != params.c || forged.second.delta != params.delta)
        throw std::invalid_argument("parameters do not match the forged instance");

    PolicySpec spec = known ? PolicySpec::ucb_known() : PolicySpec::ucb_anytime();
    double post_rounds = static_cast<double>(params.T - params.K * params.c);
    double locked = post_rounds * (1.0 - params.delta);

    // Branch enumeration: the tie at round Kc+1 is K-way uniform, so the
    // expectation is the average of the K forced branches.
    for (int j = 1; j <= params.K; ++j) {
        EpisodeOptions o;
        Trajectory traj = run_episode(
            inst, spec, o, TieResolver::sequence(forced_break_sequence(params.c, params.K, j)));
        double want = j == 1 ? 0.0 : locked;
        if (std::abs(traj.realized_regret - want) > 1e-9 * std::max(1.0, want))
            throw std::logic_error("tie branch " + std::to_string(j) +
                                   " regret does not match the lock-in value");
    }
    return (1.0 - 1.0 / params.K) * locked;
}

namespace {

void put_num(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    if (std::isinf(v)) {
        os << (v > 0 ? "inf" : "-inf");
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    os << buf;
}

} // namespace

void write_trace_csv(std::ostream& os, const Trajectory& traj) {
    if (!traj.traced) throw std::invalid_argument("trajectory carries no traces");
    os << "round,arm,reward,oracle_arm,oracle_mean,step_regret,cum_regret";
    for (int k = 1; k <= traj.K; ++k) os << ",mean_" << k;
    bool with_indices = !traj.indices.empty();
    if (with_indices)
        for (int k = 1; k <= traj.K; ++k) os << ",index_" << k;
    os << "\n";
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        const StepRecord& rec = traj.steps[i];
        os << rec.round << "," << rec.arm << ",";
        put_num(os, rec.reward);
        os << "," << traj.oracle_arms[i] << ",";
        put_num(os, traj.oracle_means[i]);
        os << ",";
        put_num(os, traj.step_regrets[i]);
        os << ",";
        put_num(os, traj.cum_regrets[i]);
        for (int k = 0; k < traj.K; ++k) {
            os << ",";
            put_num(os, traj.means[i][static_cast<std::size_t>(k)]);
        }
        if (with_indices) {
            for (int k = 0; k < traj.K; ++k) {
                os << ",";
                put_num(os, traj.indices[i][static_cast<std::size_t>(k)]);
            }
        }
        os << "\n";
    }
}

SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats s;
    s.n = static_cast<long>(xs.size());
    if (s.n == 0) return s;
    KahanSum sum;
    for (double x : xs) sum.add(x);
    s.mean = sum.sum / static_cast<double>(s.n);
    if (s.n < 2) return s;
    KahanSum m2, m4;
    for (double x : xs) {
        double d2 = (x - s.mean) * (x - s.mean);
        m2.add(d2);
        m4.add(d2 * d2);
    }
    double n = static_cast<double>(s.n);
    double mu2 = m2.sum / n;
    double mu4 = m4.sum / n;
    s.var = m2.sum / (n - 1.0);
    s.mean_std_error = std::sqrt(s.var / n);
    double var_of_var = (mu4 - (n - 3.0) / (n - 1.0) * mu2 * mu2) / n;
    s.var_std_error = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
    return s;
}

nlohmann::json to_json(const RegretReport& r) {
    return {{"mean", r.mean},
            {"stderr", r.std_error},
            {"reps", r.reps},
            {"seed", r.seed},
            {"ci95", {r.ci_lo, r.ci_hi}}};
}

} // namespace swb
