#include "swb/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace swb {

int TieResolver::pick(const std::vector<int>& tied, std::mt19937_64& ties) {
    if (tied.empty()) throw std::logic_error("tie resolver consulted with an empty set");
    if (tied.size() == 1) return tied.front();
    switch (kind_) {
        case Kind::Fixed:
            if (std::find(tied.begin(), tied.end(), fixed_arm_) == tied.end())
                throw std::logic_error("fixed tie arm " + std::to_string(fixed_arm_) +
                                       " is not in the tied set");
            return fixed_arm_;
        case Kind::Sequence:
            if (next_ < seq_.size()) {
                int arm = seq_[next_++];
                if (std::find(tied.begin(), tied.end(), arm) == tied.end())
                    throw std::logic_error("sequence tie arm " + std::to_string(arm) +
                                           " is not in the tied set");
                return arm;
            }
            [[fallthrough]]; // exhausted: uniform
        case Kind::Uniform:
            break;
    }
    return tied[static_cast<std::size_t>(canonical(ties) * static_cast<double>(tied.size())) %
                tied.size()];
}

PolicySpec PolicySpec::etc(int m) {
    PolicySpec s;
    s.kind = Kind::Etc;
    s.explore_rounds = m;
    return s;
}

PolicySpec PolicySpec::eps_greedy(double eps) {
    PolicySpec s;
    s.kind = Kind::EpsGreedy;
    s.eps = eps;
    return s;
}

PolicySpec PolicySpec::ucb_known() {
    PolicySpec s;
    s.kind = Kind::UcbKnownHorizon;
    return s;
}

PolicySpec PolicySpec::ucb_anytime() {
    PolicySpec s;
    s.kind = Kind::UcbAnytime;
    return s;
}

PolicySpec PolicySpec::restarted(PolicySpec inner, int d) {
    PolicySpec s;
    s.kind = Kind::Restarted;
    s.restarts = d;
    s.inner = std::make_shared<const PolicySpec>(std::move(inner));
    return s;
}

PolicySpec parse_policy(const std::string& designation) {
    auto bad = [&designation](const std::string& why) {
        return std::invalid_argument("bad policy designation '" + designation + "': " + why);
    };
    if (designation == "ucb-known") return PolicySpec::ucb_known();
    if (designation == "ucb-anytime") return PolicySpec::ucb_anytime();
    if (designation.rfind("etc:m=", 0) == 0) {
        try {
            return PolicySpec::etc(std::stoi(designation.substr(6)));
        } catch (const std::exception&) {
            throw bad("expected etc:m=<int>");
        }
    }
    if (designation.rfind("eps-greedy:eps=", 0) == 0) {
        try {
            return PolicySpec::eps_greedy(std::stod(designation.substr(15)));
        } catch (const std::exception&) {
            throw bad("expected eps-greedy:eps=<num>");
        }
    }
    if (designation.rfind("restart:d=", 0) == 0) {
        std::size_t colon = designation.find(':', 10);
        if (colon == std::string::npos) throw bad("expected restart:d=<int>:<inner>");
        int d = 0;
        try {
            d = std::stoi(designation.substr(10, colon - 10));
        } catch (const std::exception&) {
            throw bad("expected restart:d=<int>:<inner>");
        }
        PolicySpec inner = parse_policy(designation.substr(colon + 1));
        if (inner.kind == PolicySpec::Kind::Restarted) throw bad("restart nesting depth is 1");
        return PolicySpec::restarted(std::move(inner), d);
    }
    throw bad("unknown policy");
}

std::string format_policy(const PolicySpec& spec) {
    switch (spec.kind) {
        case PolicySpec::Kind::Etc:
            return "etc:m=" + std::to_string(spec.explore_rounds);
        case PolicySpec::Kind::EpsGreedy: {
            std::ostringstream os;
            os << "eps-greedy:eps=" << spec.eps;
            return os.str();
        }
        case PolicySpec::Kind::UcbKnownHorizon:
            return "ucb-known";
        case PolicySpec::Kind::UcbAnytime:
            return "ucb-anytime";
        case PolicySpec::Kind::Restarted:
            return "restart:d=" + std::to_string(spec.restarts) + ":" + format_policy(*spec.inner);
    }
    return "?";
}

long restart_segment_start(int d, long horizon, int i) {
    return (static_cast<long>(i - 1) * horizon) / d + 1;
}

long restart_segment_length(int d, long horizon, int i) {
    return (static_cast<long>(i) * horizon) / d - (static_cast<long>(i - 1) * horizon) / d;
}

int restart_segment_of(int d, long horizon, long t) {
    for (int i = 1; i <= d; ++i)
        if (t <= (static_cast<long>(i) * horizon) / d) return i - 1;
    return d - 1;
}

PolicyState init_policy(const PolicySpec& spec, int K, long horizon) {
    if (K < 2) throw std::invalid_argument("policy needs K >= 2 arms");
    if (horizon < 1) throw std::invalid_argument("policy needs horizon >= 1");
    switch (spec.kind) {
        case PolicySpec::Kind::Etc:
            if (spec.explore_rounds < 1)
                throw std::invalid_argument("etc needs m >= 1");
            if (static_cast<long>(spec.explore_rounds) * K > horizon)
                throw std::invalid_argument("etc exploration schedule m*K = " +
                                            std::to_string(1L * spec.explore_rounds * K) +
                                            " exceeds the horizon " + std::to_string(horizon));
            break;
        case PolicySpec::Kind::EpsGreedy:
            if (!(spec.eps >= 0.0 && spec.eps <= 1.0))
                throw std::invalid_argument("eps-greedy needs eps in [0,1]");
            break;
        case PolicySpec::Kind::Restarted: {
            if (spec.restarts < 1) throw std::invalid_argument("restart needs d >= 1");
            if (!spec.inner) throw std::invalid_argument("restart needs an inner policy");
            if (spec.inner->kind == PolicySpec::Kind::Restarted)
                throw std::invalid_argument("restart nesting depth is 1");
            if (horizon < spec.restarts)
                throw std::invalid_argument("restart needs horizon >= d");
            for (int i = 1; i <= spec.restarts; ++i) // every sub-horizon must be feasible
                init_policy(*spec.inner, K, restart_segment_length(spec.restarts, horizon, i));
            break;
        }
        default:
            break;
    }

    PolicyState st;
    st.spec = spec;
    st.K = K;
    st.t = 1;
    st.horizon = horizon;
    st.counts.assign(static_cast<std::size_t>(K), 0);
    st.sums.assign(static_cast<std::size_t>(K), 0.0);
    if (spec.kind == PolicySpec::Kind::Restarted) {
        st.restart_segment = 0;
        st.inner = std::make_unique<PolicyState>(
            init_policy(*spec.inner, K, restart_segment_length(spec.restarts, horizon, 1)));
    }
    return st;
}

double ucb_index(double mean, long n, double logterm) {
    if (n == 0) return std::numeric_limits<double>::infinity();
    return mean + std::sqrt(2.0 * logterm / static_cast<double>(n));
}

double empirical_mean(const PolicyState& state, int arm) {
    if (arm < 1 || arm > state.K) throw std::domain_error("arm index out of range");
    long n = state.counts[static_cast<std::size_t>(arm - 1)];
    if (n < 1) throw std::domain_error("arm " + std::to_string(arm) + " has no pulls yet");
    return state.sums[static_cast<std::size_t>(arm - 1)] / static_cast<double>(n);
}

namespace {

// Ascending argmax set under exact comparison; exact ties are what the
// constructed deterministic instances rely on.
std::vector<int> argmax_set(const std::vector<double>& vals) {
    double best = vals[0];
    for (double v : vals) best = std::max(best, v);
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(vals.size()); ++k)
        if (vals[static_cast<std::size_t>(k)] == best) out.push_back(k + 1);
    return out;
}

std::vector<double> all_means(const PolicyState& st) {
    std::vector<double> m(static_cast<std::size_t>(st.K));
    for (int k = 0; k < st.K; ++k) {
        auto i = static_cast<std::size_t>(k);
        m[i] = st.sums[i] / static_cast<double>(st.counts[i]); // callers ensure counts >= 1
    }
    return m;
}

int select_base(PolicyState& st, TieResolver& tie, std::mt19937_64& policy,
                std::mt19937_64& ties) {
    switch (st.spec.kind) {
        case PolicySpec::Kind::Etc: {
            long mk = static_cast<long>(st.spec.explore_rounds) * st.K;
            if (st.t <= mk) return static_cast<int>((st.t - 1) % st.K) + 1;
            if (st.committed_arm == 0)
                st.committed_arm = tie.pick(argmax_set(all_means(st)), ties);
            return st.committed_arm;
        }
        case PolicySpec::Kind::EpsGreedy: {
            if (st.t <= st.K) return static_cast<int>((st.t - 1) % st.K) + 1;
            if (canonical(policy) < st.spec.eps) return uniform_arm(policy, st.K);
            return tie.pick(argmax_set(all_means(st)), ties);
        }
        case PolicySpec::Kind::UcbKnownHorizon:
        case PolicySpec::Kind::UcbAnytime: {
            double logterm = st.spec.kind == PolicySpec::Kind::UcbKnownHorizon
                                 ? std::log(static_cast<double>(st.horizon))
                                 : std::log(static_cast<double>(st.t));
            std::vector<double> idx(static_cast<std::size_t>(st.K));
            for (int k = 0; k < st.K; ++k) {
                auto i = static_cast<std::size_t>(k);
                double mean = st.counts[i] > 0
                                  ? st.sums[i] / static_cast<double>(st.counts[i])
                                  : 0.0;
                idx[i] = ucb_index(mean, st.counts[i], logterm);
            }
            return tie.pick(argmax_set(idx), ties);
        }
        default:
            throw std::logic_error("select_base on a restarted state");
    }
}

} // namespace

int select_arm(PolicyState& state, TieResolver& tie, std::mt19937_64& policy,
               std::mt19937_64& ties) {
    if (state.t > state.horizon)
        throw std::out_of_range("episode exhausted at round " + std::to_string(state.t));
    int arm;
    if (state.spec.kind == PolicySpec::Kind::Restarted)
        arm = select_base(*state.inner, tie, policy, ties);
    else
        arm = select_base(state, tie, policy, ties);
    state.last_selected = arm;
    return arm;
}

void observe(PolicyState& state, int arm, double reward) {
    if (arm < 1 || arm > state.K) throw std::invalid_argument("arm index out of range");
    if (arm != state.last_selected)
        throw std::invalid_argument("observed arm " + std::to_string(arm) +
                                    " does not match the selected arm " +
                                    std::to_string(state.last_selected));
    if (!(reward >= 0.0 && reward <= 1.0))
        throw std::invalid_argument("reward outside [0,1]");

    auto i = static_cast<std::size_t>(arm - 1);
    state.counts[i] += 1;
    state.sums[i] += reward;
    state.t += 1;

    if (state.spec.kind == PolicySpec::Kind::Restarted) {
        PolicyState& in = *state.inner;
        in.last_selected = arm;
        in.counts[i] += 1;
        in.sums[i] += reward;
        in.t += 1;
        int d = state.spec.restarts;
        long seg_end = (static_cast<long>(state.restart_segment + 1) * state.horizon) / d;
        if (state.t > seg_end && state.restart_segment + 1 < d) {
            state.restart_segment += 1;
            state.inner = std::make_unique<PolicyState>(init_policy(
                *state.spec.inner, state.K,
                restart_segment_length(d, state.horizon, state.restart_segment + 1)));
        }
    }
}

} // namespace swb
