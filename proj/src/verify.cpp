#include "swb/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace swb {

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::EtcT1: return "ETC_T1";
        case TheoremId::EgT2: return "EG_T2";
        case TheoremId::UcbT3: return "UCB_T3";
        case TheoremId::UcbC1: return "UCB_C1";
        case TheoremId::RestartT4: return "RESTART_T4";
        case TheoremId::RestartT5: return "RESTART_T5";
        case TheoremId::RestartC2: return "RESTART_C2";
    }
    return "?";
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
    std::string k;
    for (char c : s) k.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(c)));
    if (k == "etc" || k == "etc-t1") return TheoremId::EtcT1;
    if (k == "eg" || k == "eps-greedy" || k == "eg-t2") return TheoremId::EgT2;
    if (k == "ucb" || k == "ucb-t3") return TheoremId::UcbT3;
    if (k == "ucb-anytime" || k == "ucb-c1") return TheoremId::UcbC1;
    if (k == "restart-stationary" || k == "restart-t4") return TheoremId::RestartT4;
    if (k == "restart-change" || k == "restart-t5") return TheoremId::RestartT5;
    if (k == "restart-corollary" || k == "restart-c2") return TheoremId::RestartC2;
    return std::nullopt;
}

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j;
    j["theorem"] = theorem_name(c.theorem);
    j["params"] = c.params;
    j["bound"] = c.bound;
    j["exact"] = c.exact ? nlohmann::json(*c.exact) : nlohmann::json(nullptr);
    j["measured_mean"] =
        c.measured_mean ? nlohmann::json(*c.measured_mean) : nlohmann::json(nullptr);
    j["measured_stderr"] =
        c.measured_stderr ? nlohmann::json(*c.measured_stderr) : nlohmann::json(nullptr);
    j["reps"] = c.reps;
    j["seed"] = c.seed;
    j["pass"] = c.pass;
    return j;
}

double eg_tau_closed_form(long T, int K, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("eg_tau_closed_form needs eps in [0,1]");
    if (eps == 0.0) return static_cast<double>(T); // limit
    double p = eps / K;
    if (p >= 1.0) return 1.0;
    // sum_{t=0}^{T-1} (1-p)^t = (1 - (1-p)^T) / p
    return -std::expm1(static_cast<double>(T) * std::log1p(-p)) / p;
}

bool bernoulli_power_check(double x, long r) {
    if (!(x > 0.0 && x <= 1.0) || r < 0)
        throw std::invalid_argument("bernoulli_power_check domain is x in (0,1], r >= 0");
    double lhs = std::pow(1.0 - x, static_cast<double>(r));
    double rhs = 1.0 / (1.0 + static_cast<double>(r) * x);
    return lhs <= rhs;
}

bool eg_var_bound_check(long T, int K, double eps, double sample_var,
                        double sample_var_stderr) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eg_var_bound_check needs eps in (0,1]");
    double bound = static_cast<double>(K) / eps * static_cast<double>(T);
    return sample_var <= bound + 3.0 * sample_var_stderr;
}

namespace {

// Steps a non-restarted policy over the instance, extending the final
// segment's rewards past T, until `stop` fires or `cap` rounds pass
// break_round. Returns rounds waited, capped.
template <class Stop>
long run_until(const Instance& inst, const PolicySpec& spec, long break_round, long cap,
               std::uint64_t seed, std::uint64_t replication, Stop&& stop) {
    if (spec.kind == PolicySpec::Kind::Restarted)
        throw std::invalid_argument("waiting-time sampling covers non-restarted policies");
    PolicyState st = init_policy(spec, inst.K, break_round + cap + 1);
    auto policy = make_stream(seed, replication, Stream::Policy);
    auto rewards = make_stream(seed, replication, Stream::Reward);
    auto ties = make_stream(seed, replication, Stream::Tie);
    TieResolver tie = TieResolver::uniform();

    std::size_t seg_idx = 0;
    const std::size_t last = inst.segments.size() - 1;
    for (long t = 1; t <= break_round + cap; ++t) {
        while (seg_idx < last && t > inst.segments[seg_idx].end) ++seg_idx;
        const Segment& seg = inst.segments[seg_idx];
        int arm = select_arm(st, tie, policy, ties);
        double reward = sample_reward(seg.arms[static_cast<std::size_t>(arm - 1)], rewards);
        observe(st, arm, reward);
        if (t > break_round && stop(st, arm)) return t - break_round;
    }
    return cap;
}

} // namespace

long waiting_time_to_arm(const Instance& inst, const PolicySpec& spec, int target_arm,
                         long break_round, long cap, std::uint64_t seed,
                         std::uint64_t replication) {
    return run_until(inst, spec, break_round, cap, seed, replication,
                     [target_arm](const PolicyState&, int arm) { return arm == target_arm; });
}

long crossover_time(const Instance& inst, const PolicySpec& spec, long break_round, long cap,
                    std::uint64_t seed, std::uint64_t replication) {
    return run_until(inst, spec, break_round, cap, seed, replication,
                     [](const PolicyState& st, int) {
                         return empirical_mean(st, 1) <= empirical_mean(st, 2);
                     });
}

namespace {

Certificate base_cert(TheoremId id, nlohmann::json params, long reps, std::uint64_t seed) {
    Certificate c;
    c.theorem = id;
    c.params = std::move(params);
    c.reps = reps;
    c.seed = seed;
    return c;
}

Certificate certify_etc(const CertifyParams& p, long reps, std::uint64_t seed) {
    Certificate c = base_cert(TheoremId::EtcT1,
                              {{"T", p.T}, {"K", p.K}, {"m", p.m}}, reps, seed);
    Instance inst = forge_etc(p.T, p.K, p.m);
    c.bound = etc_bound(p.T, p.m, p.K).value;
    EpisodeOptions o;
    o.seed = seed;
    // Deterministic rewards and a tie-free schedule: one episode is exact.
    c.exact = run_episode(inst, PolicySpec::etc(p.m), o).realized_regret;
    c.pass = *c.exact >= c.bound;
    return c;
}

Certificate certify_eg(const CertifyParams& p, long reps, std::uint64_t seed) {
    Certificate c = base_cert(TheoremId::EgT2,
                              {{"T", p.T}, {"K", p.K}, {"eps", p.eps}}, reps, seed);
    c.bound = eg_bound_combined(p.T).value;
    PolicySpec eg = PolicySpec::eps_greedy(p.eps);

    RegretReport early =
        monte_carlo_regret(forge_eg_early(p.T, p.K), eg, reps, mix64(seed, 1));
    RegretReport mid = monte_carlo_regret(forge_eg_mid(p.T, p.K), eg, reps, mix64(seed, 2));
    const RegretReport& best = early.mean >= mid.mean ? early : mid;
    c.measured_mean = best.mean;
    c.measured_stderr = best.std_error;
    c.params["measured_early"] = early.mean;
    c.params["measured_mid"] = mid.mean;
    c.pass = best.mean + 3.0 * best.std_error >= c.bound;
    return c;
}

Certificate certify_ucb(TheoremId id, const CertifyParams& p, long reps,
                        std::uint64_t seed) {
    bool anytime = id == TheoremId::UcbC1;
    Certificate c = base_cert(id, {{"T", p.T}, {"K", p.K}}, reps, seed);
    auto [inst, fp] = forge_ucb(p.T, p.K);
    c.params["c"] = fp.c;
    c.params["delta"] = fp.delta;
    c.params["alpha"] = fp.alpha;
    c.params["breakpoint"] = fp.breakpoint;
    c.bound = ucb_bound_floor(p.T, p.K);

    bool condition = check_inertia_condition(fp.c, fp.delta, p.T, p.K, !anytime);
    // exact_ucb_regret re-runs every forced tie branch and checks the
    // branch values; it throws if the enumeration disagrees.
    PolicySpec::Kind variant =
        anytime ? PolicySpec::Kind::UcbAnytime : PolicySpec::Kind::UcbKnownHorizon;
    c.exact = exact_ucb_regret(fp, variant);

    PolicySpec spec = anytime ? PolicySpec::ucb_anytime() : PolicySpec::ucb_known();
    RegretReport mc = monte_carlo_regret(inst, spec, reps, seed);
    c.measured_mean = mc.mean;
    c.measured_stderr = mc.std_error;

    bool equality = std::abs(mc.mean - *c.exact) <= 3.0 * mc.std_error;
    c.pass = condition && *c.exact >= c.bound && equality;
    return c;
}

Certificate certify_restart_t4(const CertifyParams& p, long reps, std::uint64_t seed) {
    Certificate c = base_cert(TheoremId::RestartT4,
                              {{"T", p.T}, {"K", p.K}, {"d", p.d}}, reps, seed);
    BoundValue b = restart_stationary_bound(p.K, p.d, p.T);
    c.bound = b.value;
    c.exact = b.value;
    // Calculator check: the value is certified against its closed form and
    // the sqrt(d) growth; the underlying stationary hard instance is an
    // external randomized construction and is not rebuilt here.
    bool monotone = true;
    double prev = 0.0;
    for (int d = 1; d <= p.d; ++d) {
        if (static_cast<long>(p.K) > p.T / d) break;
        double v = restart_stationary_bound(p.K, d, p.T).value;
        if (v < prev) monotone = false;
        prev = v;
    }
    double oracle = std::sqrt(static_cast<double>(p.K) * p.d * static_cast<double>(p.T)) / 20.0;
    c.pass = monotone && std::abs(b.value - oracle) <= 1e-12 * std::max(1.0, oracle);
    return c;
}

Certificate certify_restart_t5(const CertifyParams& p, long reps, std::uint64_t seed) {
    double a = p.a > 0.0 ? p.a : 0.07 * (1.0 - 1.0 / p.K);
    Certificate c = base_cert(TheoremId::RestartT5,
                              {{"T", p.T}, {"K", p.K}, {"d", p.d}, {"gamma", p.gamma},
                               {"a", a}},
                              reps, seed);
    BoundValue b = restart_change_bound(a, p.T, p.d, p.gamma, p.K);
    c.bound = b.value;
    c.exact = b.value;
    double at_d = restart_change_bound(a, p.T, p.d, static_cast<double>(p.d), p.K).value;
    double above = restart_change_bound(a, p.T, p.d, static_cast<double>(p.d) + 1.0, p.K).value;
    bool continuous = std::abs(at_d - a * static_cast<double>(p.T)) <= 1e-9 &&
                      std::abs(above - a * static_cast<double>(p.T)) <= 1e-9;
    bool monotone = true;
    if (a * static_cast<double>(p.T) >=
        std::sqrt(static_cast<double>(p.K) * p.d * static_cast<double>(p.T)) / 20.0) {
        double prev = -1.0;
        for (double g = 0.0; g <= static_cast<double>(p.d); g += 0.25) {
            double v = restart_change_bound(a, p.T, p.d, g, p.K).value;
            if (v < prev - 1e-12) monotone = false;
            prev = v;
        }
    }
    c.pass = continuous && monotone;
    return c;
}

Certificate certify_restart_c2(const CertifyParams& p, long reps, std::uint64_t seed) {
    Certificate c = base_cert(TheoremId::RestartC2,
                              {{"T", p.T}, {"K", p.K}, {"d", p.d}, {"gamma", p.gamma}},
                              reps, seed);
    // UCB line of the corollary: 0.07 (min{d,g}/d)(1-1/K)T plus the
    // stationary term when g <= d.
    double frac = static_cast<double>(std::min(p.d, p.gamma)) / p.d;
    double linear = 0.07 * frac * (1.0 - 1.0 / p.K) * static_cast<double>(p.T);
    double stationary =
        p.gamma <= p.d ? (1.0 - static_cast<double>(p.gamma) / p.d) *
                             std::sqrt(static_cast<double>(p.K) * p.d *
                                       static_cast<double>(p.T)) /
                             20.0
                       : 0.0;
    c.bound = linear + stationary;
    c.params["linear_term"] = linear;

    Instance inst = forge_restart_composite(p.T, p.K, p.d, p.gamma, AdversaryKind::Ucb);
    PolicySpec spec = PolicySpec::restarted(PolicySpec::ucb_known(), p.d);
    RegretReport mc = monte_carlo_regret(inst, spec, reps, seed);
    c.measured_mean = mc.mean;
    c.measured_stderr = mc.std_error;
    c.pass = mc.mean + 3.0 * mc.std_error >= c.bound;
    return c;
}

} // namespace

Certificate certify(TheoremId id, const CertifyParams& p, long reps, std::uint64_t seed) {
    switch (id) {
        case TheoremId::EtcT1: return certify_etc(p, reps, seed);
        case TheoremId::EgT2: return certify_eg(p, reps, seed);
        case TheoremId::UcbT3: return certify_ucb(id, p, reps, seed);
        case TheoremId::UcbC1: return certify_ucb(id, p, reps, seed);
        case TheoremId::RestartT4: return certify_restart_t4(p, reps, seed);
        case TheoremId::RestartT5: return certify_restart_t5(p, reps, seed);
        case TheoremId::RestartC2: return certify_restart_c2(p, reps, seed);
    }
    throw std::invalid_argument("unknown theorem id");
}

} // namespace swb
