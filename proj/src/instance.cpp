#include "swb/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swb {

ValidationReport validate_instance(const Instance& inst, std::optional<int> max_breakpoints) {
    ValidationReport rep;
    auto flag = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    if (inst.K < 2) flag("arm count K must be at least 2, got " + std::to_string(inst.K));
    if (inst.T < 1) flag("horizon T must be at least 1, got " + std::to_string(inst.T));
    if (inst.init_rounds < 0)
        flag("init_rounds must be nonnegative, got " + std::to_string(inst.init_rounds));
    if (inst.init_rounds >= inst.T && inst.T >= 1)
        flag("init_rounds must be smaller than T");
    if (inst.segments.empty()) {
        flag("instance has no segments");
        rep.ok = false;
        return rep;
    }

    if (inst.segments.front().start != 1)
        flag("first segment starts at round " + std::to_string(inst.segments.front().start) +
             ", expected 1");
    if (inst.segments.back().end != inst.T)
        flag("last segment ends at round " + std::to_string(inst.segments.back().end) +
             ", expected T = " + std::to_string(inst.T));

    for (std::size_t i = 0; i < inst.segments.size(); ++i) {
        const Segment& s = inst.segments[i];
        const std::string tag = "segment " + std::to_string(i + 1);
        if (s.start < 1 || s.start > s.end)
            flag(tag + " has invalid bounds [" + std::to_string(s.start) + "," +
                 std::to_string(s.end) + "]");
        if (static_cast<int>(s.arms.size()) != inst.K)
            flag(tag + " has " + std::to_string(s.arms.size()) + " arm specs, expected K = " +
                 std::to_string(inst.K));
        for (std::size_t k = 0; k < s.arms.size(); ++k) {
            double v = s.arms[k].value;
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream os;
                os << tag << " arm " << (k + 1) << " value " << v << " outside [0,1]";
                flag(os.str());
            }
        }
        if (i > 0) {
            const Segment& prev = inst.segments[i - 1];
            if (s.start > prev.end + 1)
                flag("gap at round " + std::to_string(prev.end + 1));
            else if (s.start <= prev.end)
                flag("overlap at round " + std::to_string(s.start));
            if (s.arms == prev.arms)
                flag("segments " + std::to_string(i) + " and " + std::to_string(i + 1) +
                     " have identical arm specs; merge them or the breakpoint count lies");
        }
    }

    rep.breakpoints = static_cast<int>(inst.segments.size()) - 1;
    if (max_breakpoints && rep.breakpoints > *max_breakpoints)
        flag("instance has " + std::to_string(rep.breakpoints) +
             " breakpoints, budget allows " + std::to_string(*max_breakpoints));

    rep.ok = rep.violations.empty();
    return rep;
}

const Segment& segment_at(const Instance& inst, long t) {
    if (t < 1 || t > inst.T)
        throw std::out_of_range("round " + std::to_string(t) + " outside [1," +
                                std::to_string(inst.T) + "]");
    // Few segments in practice; binary search on start.
    auto it = std::upper_bound(inst.segments.begin(), inst.segments.end(), t,
                               [](long tt, const Segment& s) { return tt < s.start; });
    if (it == inst.segments.begin())
        throw std::out_of_range("round " + std::to_string(t) + " precedes the first segment");
    --it;
    if (t > it->end) throw std::out_of_range("round " + std::to_string(t) + " falls in a gap");
    return *it;
}

int optimal_arm(const Instance& inst, long t) {
    const Segment& s = segment_at(inst, t);
    int best = 1;
    double best_mean = expected_reward(s.arms[0]);
    for (int k = 2; k <= inst.K; ++k) {
        double m = expected_reward(s.arms[static_cast<std::size_t>(k - 1)]);
        if (m > best_mean) {
            best_mean = m;
            best = k;
        }
    }
    return best;
}

double oracle_mean(const Instance& inst, long t) {
    const Segment& s = segment_at(inst, t);
    double best = expected_reward(s.arms[0]);
    for (std::size_t k = 1; k < s.arms.size(); ++k)
        best = std::max(best, expected_reward(s.arms[k]));
    return best;
}

double oracle_cumulative_reward(const Instance& inst, long from, long to) {
    if (from < 1 || to > inst.T || from > to)
        throw std::out_of_range("invalid round range [" + std::to_string(from) + "," +
                                std::to_string(to) + "]");
    KahanSum acc;
    for (long t = from; t <= to; ++t) {
        if (t <= inst.init_rounds) continue;
        acc.add(oracle_mean(inst, t));
    }
    return acc.sum;
}

namespace {

nlohmann::json spec_to_json(const RewardSpec& s) {
    if (s.kind == RewardSpec::Kind::Deterministic)
        return {{"kind", "det"}, {"value", s.value}};
    return {{"kind", "bernoulli"}, {"p", s.value}};
}

RewardSpec spec_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "det") return RewardSpec::det(j.at("value").get<double>());
    if (kind == "bernoulli") return RewardSpec::bernoulli(j.at("p").get<double>());
    throw std::invalid_argument("unknown reward kind '" + kind + "'");
}

} // namespace

nlohmann::json to_json(const Instance& inst) {
    nlohmann::json segs = nlohmann::json::array();
    for (const Segment& s : inst.segments) {
        nlohmann::json arms = nlohmann::json::array();
        for (const RewardSpec& a : s.arms) arms.push_back(spec_to_json(a));
        segs.push_back({{"start", s.start}, {"end", s.end}, {"arms", arms}});
    }
    return {{"K", inst.K}, {"T", inst.T}, {"init_rounds", inst.init_rounds}, {"segments", segs}};
}

Instance instance_from_json(const nlohmann::json& j) {
    Instance inst;
    inst.K = j.at("K").get<int>();
    inst.T = j.at("T").get<long>();
    inst.init_rounds = j.at("init_rounds").get<long>();
    for (const auto& js : j.at("segments")) {
        Segment s;
        s.start = js.at("start").get<long>();
        s.end = js.at("end").get<long>();
        for (const auto& ja : js.at("arms")) s.arms.push_back(spec_from_json(ja));
        inst.segments.push_back(std::move(s));
    }
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << to_json(inst).dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    is >> j;
    return instance_from_json(j);
}

} // namespace swb
