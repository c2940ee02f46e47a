#include "swb/forge.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swb {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<RewardSpec> det_row(int K, double first, double rest) {
    std::vector<RewardSpec> row(static_cast<std::size_t>(K), RewardSpec::det(rest));
    row[0] = RewardSpec::det(first);
    return row;
}

void require_ucb_precondition(long T, int K) {
    require(K >= 2, "forge needs K >= 2");
    require(static_cast<double>(T) > 4.0 * K * std::log(static_cast<double>(T)),
            "precondition T > 4K ln T fails: T = " + std::to_string(T) + ", 4K ln T = " +
                std::to_string(4.0 * K * std::log(static_cast<double>(T))));
}

} // namespace

double ucb_alpha(double T) {
    if (!(T >= 1.0)) throw std::invalid_argument("alpha needs T >= 1");
    return std::sqrt(2.0 * std::log(T));
}

std::pair<double, double> ucb_c_interval(long T, int K) {
    require_ucb_precondition(T, K);
    double a = ucb_alpha(T);
    double lo = std::pow(static_cast<double>(T) * a / (2.0 * K), 2.0 / 3.0);
    double hi = std::pow(static_cast<double>(T) * a / K, 2.0 / 3.0);
    return {lo, hi};
}

bool check_inertia_condition(long c, double delta, long T, int K, bool known_horizon) {
    long breakpoint = static_cast<long>(K) * c + 1;
    if (c < 1 || breakpoint > T) return false;
    double log_T = std::log(static_cast<double>(T));
    for (long x = 1; x <= T - static_cast<long>(K) * c; ++x) {
        double L = known_horizon ? log_T
                                 : std::log(static_cast<double>(static_cast<long>(K) * c + x));
        double lhs = delta * static_cast<double>(x) / static_cast<double>(c + x) +
                     std::sqrt(2.0 * L / static_cast<double>(c + x));
        double rhs = std::sqrt(2.0 * L / static_cast<double>(c));
        if (!(lhs > rhs)) return false;
    }
    return true;
}

std::pair<Instance, UcbForgeParams> forge_ucb(long T, int K) {
    auto [lo, hi] = ucb_c_interval(T, K); // enforces the precondition
    long c = static_cast<long>(std::ceil(lo));
    if (static_cast<double>(c) > hi)
        throw std::logic_error("no integer in the admissible interval"); // cannot happen
    UcbForgeParams p;
    p.T = T;
    p.K = K;
    p.alpha = ucb_alpha(T);
    p.c = c;
    p.delta = p.alpha / std::sqrt(static_cast<double>(c));
    p.breakpoint = static_cast<long>(K) * c + 1;

    if (!(p.delta < 1.0))
        throw std::logic_error("delta >= 1; c > alpha^2 should rule this out");
    if (!check_inertia_condition(p.c, p.delta, T, K, true) ||
        !check_inertia_condition(p.c, p.delta, T, K, false))
        throw std::logic_error("forged parameters fail the lock-in condition");

    Instance inst;
    inst.K = K;
    inst.T = T;
    inst.init_rounds = 0;
    inst.segments.push_back({1, p.breakpoint - 1,
                             std::vector<RewardSpec>(static_cast<std::size_t>(K),
                                                     RewardSpec::det(0.0))});
    inst.segments.push_back({p.breakpoint, T, det_row(K, 1.0, p.delta)});
    return {std::move(inst), p};
}

Instance forge_etc(long T, int K, int m) {
    require(K >= 2, "forge needs K >= 2");
    require(m >= 1, "forge_etc needs m >= 1");
    long mk = static_cast<long>(m) * K;
    require(mk < T, "commit phase must be nonempty: m*K = " + std::to_string(mk) +
                        " leaves no rounds before T = " + std::to_string(T));
    Instance inst;
    inst.K = K;
    inst.T = T;
    inst.init_rounds = 0;
    std::vector<RewardSpec> explore(static_cast<std::size_t>(K), RewardSpec::det(0.0));
    explore.back() = RewardSpec::det(1.0);
    inst.segments.push_back({1, mk, std::move(explore)});
    inst.segments.push_back({mk + 1, T, det_row(K, 1.0, 0.0)});
    return inst;
}

Instance forge_eg_early(long T, int K) {
    require(K >= 2, "forge needs K >= 2");
    require(T > K, "forge_eg_early needs T > K");
    Instance inst;
    inst.K = K;
    inst.T = T;
    inst.init_rounds = K;
    inst.segments.push_back({1, static_cast<long>(K), det_row(K, 1.0, 0.0)});
    std::vector<RewardSpec> post(static_cast<std::size_t>(K), RewardSpec::det(0.0));
    post[1] = RewardSpec::det(1.0);
    inst.segments.push_back({static_cast<long>(K) + 1, T, std::move(post)});
    return inst;
}

Instance forge_eg_mid(long T, int K) {
    require(K >= 2, "forge needs K >= 2");
    require(T % 2 == 0, "forge_eg_mid needs an even horizon");
    require(T >= 2L * K, "forge_eg_mid needs T >= 2K");
    Instance inst;
    inst.K = K;
    inst.T = T;
    inst.init_rounds = 0;
    inst.segments.push_back({1, T / 2, det_row(K, 0.5, 0.0)});
    std::vector<RewardSpec> post(static_cast<std::size_t>(K), RewardSpec::det(0.0));
    post[0] = RewardSpec::det(0.5);
    post[1] = RewardSpec::det(1.0);
    inst.segments.push_back({T / 2 + 1, T, std::move(post)});
    return inst;
}

Instance forge_restart_composite(long T, int K, int d, int gamma, AdversaryKind kind,
                                 int etc_m) {
    require(K >= 2, "forge needs K >= 2");
    require(d >= 1, "composite forge needs d >= 1");
    require(gamma >= 0, "composite forge needs gamma >= 0");
    require(gamma <= d, "composite forge needs gamma <= d");
    require(T % d == 0, std::to_string(d) + " does not divide T = " + std::to_string(T));
    long h = T / d;

    // Per-segment copy, built at local rounds 1..h and re-based below.
    Instance copy;
    switch (kind) {
        case AdversaryKind::Ucb:
            copy = forge_ucb(h, K).first;
            break;
        case AdversaryKind::Etc:
            copy = forge_etc(h, K, etc_m);
            break;
        case AdversaryKind::EgMid:
            copy = forge_eg_mid(h, K);
            break;
    }

    Instance inst;
    inst.K = K;
    inst.T = T;
    inst.init_rounds = 0;

    int copies = std::min(d, gamma);
    if (copies == 0) {
        inst.segments.push_back({1, T,
                                 std::vector<RewardSpec>(static_cast<std::size_t>(K),
                                                         RewardSpec::det(0.0))});
        return inst;
    }
    for (int i = 0; i < copies; ++i) {
        long base = static_cast<long>(i) * h;
        for (const Segment& s : copy.segments)
            inst.segments.push_back({base + s.start, base + s.end, s.arms});
    }
    // Remaining rounds continue the final adversarial rewards; extending the
    // last segment keeps the no-identical-adjacent-segments rule intact.
    inst.segments.back().end = T;
    return inst;
}

} // namespace swb
