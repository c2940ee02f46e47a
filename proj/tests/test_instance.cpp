#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "swb/instance.hpp"

using namespace swb;

namespace {

Instance stationary(int K, long T, std::vector<double> values) {
    Instance inst;
    inst.K = K;
    inst.T = T;
    std::vector<RewardSpec> arms;
    for (double v : values) arms.push_back(RewardSpec::det(v));
    inst.segments.push_back({1, T, std::move(arms)});
    return inst;
}

bool mentions(const ValidationReport& rep, const std::string& needle) {
    for (const auto& v : rep.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("validation accepts the basic shapes") {
    Instance one = stationary(2, 100, {0.5, 0.0});
    ValidationReport r = validate_instance(one);
    CHECK(r.ok);
    CHECK(r.breakpoints == 0);

    Instance two = one;
    two.segments = {{1, 20, {RewardSpec::det(0.5), RewardSpec::det(0.0)}},
                    {21, 100, {RewardSpec::det(0.0), RewardSpec::det(1.0)}}};
    r = validate_instance(two);
    CHECK(r.ok);
    CHECK(r.breakpoints == 1);
}

TEST_CASE("validation reports gaps, overlaps and identical neighbours") {
    Instance inst = stationary(2, 100, {0.5, 0.0});
    inst.segments = {{1, 20, {RewardSpec::det(0.5), RewardSpec::det(0.0)}},
                     {22, 100, {RewardSpec::det(0.0), RewardSpec::det(1.0)}}};
    ValidationReport r = validate_instance(inst);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "gap at round 21"));

    inst.segments[1].start = 15;
    CHECK(mentions(validate_instance(inst), "overlap at round 15"));

    inst.segments[1] = {21, 100, {RewardSpec::det(0.5), RewardSpec::det(0.0)}};
    CHECK(mentions(validate_instance(inst), "identical arm specs"));
}

TEST_CASE("validation catches range and field violations") {
    Instance inst = stationary(2, 100, {0.5, 1.5});
    CHECK(mentions(validate_instance(inst), "outside [0,1]"));

    inst = stationary(1, 10, {0.5});
    CHECK(mentions(validate_instance(inst), "K must be at least 2"));

    inst = stationary(2, 10, {0.5, 0.0});
    inst.init_rounds = 10;
    CHECK(mentions(validate_instance(inst), "init_rounds"));
}

TEST_CASE("breakpoint budgets are monotone") {
    Instance inst = stationary(2, 100, {0.5, 0.0});
    inst.segments = {{1, 20, {RewardSpec::det(0.5), RewardSpec::det(0.0)}},
                     {21, 100, {RewardSpec::det(0.0), RewardSpec::det(1.0)}}};
    CHECK_FALSE(validate_instance(inst, 0).ok);
    // Admission into any class with at least as many changes.
    for (int budget = 1; budget <= 5; ++budget) CHECK(validate_instance(inst, budget).ok);
}

TEST_CASE("expected_reward") {
    CHECK(expected_reward(RewardSpec::det(0.38)) == doctest::Approx(0.38));
    CHECK(expected_reward(RewardSpec::bernoulli(0.0)) == 0.0);
    CHECK(expected_reward(RewardSpec::bernoulli(0.5)) == 0.5);
}

TEST_CASE("optimal_arm picks the lowest index among ties") {
    Instance pre = stationary(3, 10, {0.0, 0.0, 1.0});
    CHECK(optimal_arm(pre, 5) == 3);
    Instance post = stationary(3, 10, {1.0, 0.0, 0.0});
    CHECK(optimal_arm(post, 5) == 1);
    Instance tie = stationary(3, 10, {0.5, 0.5, 0.5});
    CHECK(optimal_arm(tie, 1) == 1);
    CHECK_THROWS_AS(optimal_arm(tie, 11), std::out_of_range);
}

TEST_CASE("oracle_cumulative_reward sums the per-round maxima") {
    Instance inst = stationary(2, 1000, {0.0, 1.0});
    inst.segments = {{1, 40, {RewardSpec::det(0.0), RewardSpec::det(1.0)}},
                     {41, 1000, {RewardSpec::det(1.0), RewardSpec::det(0.0)}}};
    CHECK(oracle_cumulative_reward(inst, 1, 1000) == doctest::Approx(1000.0));

    CHECK(oracle_cumulative_reward(stationary(2, 50, {0.0, 0.0}), 1, 50) == 0.0);
    CHECK(oracle_cumulative_reward(stationary(2, 100, {0.5, 0.0}), 1, 100) ==
          doctest::Approx(50.0));
    CHECK_THROWS_AS(oracle_cumulative_reward(inst, 0, 10), std::out_of_range);

    Instance with_init = stationary(2, 100, {0.5, 0.0});
    with_init.init_rounds = 10;
    CHECK(oracle_cumulative_reward(with_init, 1, 100) == doctest::Approx(45.0));
    CHECK(oracle_cumulative_reward(with_init, 1, 10) == 0.0);
}

TEST_CASE("sample_reward") {
    auto g = make_stream(1, 0, Stream::Reward);
    CHECK(sample_reward(RewardSpec::det(1.0), g) == 1.0);
    CHECK(sample_reward(RewardSpec::bernoulli(1.0), g) == 1.0);

    auto before = g;
    (void)sample_reward(RewardSpec::det(0.25), g);
    CHECK(g == before); // deterministic specs leave the stream untouched

    // Law of large numbers at 3 sigma.
    long n = 100000, ones = 0;
    for (long i = 0; i < n; ++i) ones += sample_reward(RewardSpec::bernoulli(0.5), g) == 1.0;
    double mean = double(ones) / double(n);
    double sigma = 0.5 / std::sqrt(double(n));
    CHECK(std::abs(mean - 0.5) < 3 * sigma);

    // Reproducible given the stream key.
    auto g1 = make_stream(9, 3, Stream::Reward);
    auto g2 = make_stream(9, 3, Stream::Reward);
    for (int i = 0; i < 100; ++i)
        CHECK(sample_reward(RewardSpec::bernoulli(0.3), g1) ==
              sample_reward(RewardSpec::bernoulli(0.3), g2));
}

TEST_CASE("oracle dominates every action sequence on small instances") {
    std::mt19937_64 g(42);
    for (int trial = 0; trial < 20; ++trial) {
        int K = 2 + static_cast<int>(g() % 2);
        long T = 3 + static_cast<long>(g() % 4); // T in 3..6
        Instance inst;
        inst.K = K;
        inst.T = T;
        long t = 1;
        while (t <= T) {
            long end = std::min(T, t + static_cast<long>(g() % 3));
            std::vector<RewardSpec> arms;
            for (int k = 0; k < K; ++k)
                arms.push_back(RewardSpec::det(double(g() % 11) / 10.0));
            if (!inst.segments.empty() && arms == inst.segments.back().arms) {
                inst.segments.back().end = end;
            } else {
                inst.segments.push_back({t, end, std::move(arms)});
            }
            t = end + 1;
        }
        REQUIRE(validate_instance(inst).ok);

        double oracle = oracle_cumulative_reward(inst, 1, T);
        long sequences = 1;
        for (long i = 0; i < T; ++i) sequences *= K;
        for (long code = 0; code < sequences; ++code) {
            long c = code;
            double total = 0.0;
            for (long round = 1; round <= T; ++round) {
                int arm = static_cast<int>(c % K) + 1;
                c /= K;
                double r = expected_reward(segment_at(inst, round).arms[arm - 1]);
                CHECK(r >= 0.0);
                CHECK(r <= 1.0);
                total += r;
            }
            CHECK(total <= oracle + 1e-9);
        }
    }
}

TEST_CASE("instance json round-trips") {
    Instance inst;
    inst.K = 2;
    inst.T = 100;
    inst.init_rounds = 2;
    inst.segments = {{1, 30, {RewardSpec::det(0.3793567823462866), RewardSpec::bernoulli(0.5)}},
                     {31, 100, {RewardSpec::det(1.0), RewardSpec::det(0.0)}}};
    nlohmann::json j = to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(back == inst);
    CHECK(back.segments[0].arms[0].value == inst.segments[0].arms[0].value); // bit-exact

    CHECK(j["segments"][0]["arms"][0]["kind"] == "det");
    CHECK(j["segments"][0]["arms"][1]["kind"] == "bernoulli");
    CHECK(j["segments"][0]["arms"][1].contains("p"));
}
