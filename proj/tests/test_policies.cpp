#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "swb/policy.hpp"

using namespace swb;

namespace {

struct Bench {
    PolicyState st;
    TieResolver tie = TieResolver::uniform();
    std::mt19937_64 policy = make_stream(11, 0, Stream::Policy);
    std::mt19937_64 ties = make_stream(11, 0, Stream::Tie);

    explicit Bench(const PolicySpec& spec, int K, long horizon, TieResolver t = TieResolver::uniform())
        : st(init_policy(spec, K, horizon)), tie(std::move(t)) {}

    int step(double reward) {
        int arm = select_arm(st, tie, policy, ties);
        observe(st, arm, reward);
        return arm;
    }
};

} // namespace

TEST_CASE("init_policy validates parameters") {
    PolicyState st = init_policy(PolicySpec::etc(20), 2, 1000);
    CHECK(st.t == 1);
    CHECK(st.counts == std::vector<long>{0, 0});

    CHECK_THROWS_AS(init_policy(PolicySpec::etc(501), 2, 1000), std::invalid_argument);
    CHECK_THROWS_AS(init_policy(PolicySpec::etc(0), 2, 1000), std::invalid_argument);
    CHECK_THROWS_AS(init_policy(PolicySpec::eps_greedy(1.5), 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(init_policy(PolicySpec::ucb_known(), 1, 100), std::invalid_argument);

    PolicyState eg = init_policy(PolicySpec::eps_greedy(0.0), 2, 100);
    CHECK(eg.spec.eps == 0.0);

    PolicyState rs = init_policy(PolicySpec::restarted(PolicySpec::ucb_known(), 4), 2, 4000);
    REQUIRE(rs.inner != nullptr);
    CHECK(rs.inner->horizon == 1000);

    PolicySpec doubly =
        PolicySpec::restarted(PolicySpec::restarted(PolicySpec::ucb_known(), 2), 2);
    CHECK_THROWS_AS(init_policy(doubly, 2, 100), std::invalid_argument);
}

TEST_CASE("etc explores round-robin then commits") {
    // Exploration rewards (0,1): commits to arm 2 at t = mK+1 and stays.
    Bench b(PolicySpec::etc(1), 2, 100);
    CHECK(b.step(0.0) == 1);
    CHECK(b.step(1.0) == 2);
    for (int t = 3; t <= 50; ++t) CHECK(b.step(0.0) == 2);
    CHECK(b.st.committed_arm == 2);
}

TEST_CASE("eps-greedy exploits the best mean when eps is zero") {
    Bench b(PolicySpec::eps_greedy(0.0), 2, 100);
    CHECK(b.step(0.5) == 1); // forced round-robin
    CHECK(b.step(0.4) == 2);
    for (int t = 3; t <= 100; ++t) CHECK(b.step(0.5) == 1);
}

TEST_CASE("eps-greedy with eps one explores uniformly") {
    Bench b(PolicySpec::eps_greedy(1.0), 3, 1 << 20);
    b.step(0.9);
    b.step(0.5);
    b.step(0.1); // distinct means; greedy play would be deterministic
    const long n = 100000;
    long counts[3] = {0, 0, 0};
    for (long i = 0; i < n; ++i)
        counts[select_arm(b.st, b.tie, b.policy, b.ties) - 1] += 1;
    double expect = double(n) / 3.0;
    double chi2 = 0.0;
    for (long c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 13.8); // 99.9% quantile, 2 dof
}

TEST_CASE("ucb index") {
    CHECK(ucb_index(0.0, 96, std::log(1000.0)) == doctest::Approx(0.37935678234628656));
    CHECK(ucb_index(0.5, 2, 1.0) == doctest::Approx(1.5));
    CHECK(ucb_index(0.3, 0, std::log(50.0)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("ucb tie handling") {
    // Symmetric state: means (0,0), counts (96,96) -> two-way tie.
    Bench b(PolicySpec::ucb_known(), 2, 1000, TieResolver::fixed(2));
    for (int i = 0; i < 96; ++i) {
        b.st.last_selected = 1;
        observe(b.st, 1, 0.0);
        b.st.last_selected = 2;
        observe(b.st, 2, 0.0);
    }
    CHECK(select_arm(b.st, b.tie, b.policy, b.ties) == 2);
}

TEST_CASE("observe updates counts, sums and round") {
    Bench b(PolicySpec::eps_greedy(0.0), 2, 200);
    b.step(1.0);
    CHECK(empirical_mean(b.st, 1) == 1.0);
    b.step(0.0);
    CHECK(b.st.t == 3);
    CHECK_THROWS_AS(observe(b.st, 1, 1.5), std::invalid_argument);
    b.st.last_selected = 2;
    CHECK_THROWS_AS(observe(b.st, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(empirical_mean(b.st, 5), std::domain_error);

    // 95 zero pulls then one 0.38 -> mean 0.38/96.
    Bench fresh(PolicySpec::eps_greedy(0.0), 2, 200);
    for (int i = 0; i < 95; ++i) {
        fresh.st.last_selected = 1;
        observe(fresh.st, 1, 0.0);
    }
    fresh.st.last_selected = 1;
    observe(fresh.st, 1, 0.38);
    CHECK(fresh.st.counts[0] == 96);
    CHECK(empirical_mean(fresh.st, 1) == doctest::Approx(0.38 / 96).epsilon(1e-12));
}

TEST_CASE("empirical mean after a post-break run of ones is y/(B+y)") {
    Bench b(PolicySpec::eps_greedy(0.0), 2, 4000);
    const long B = 26, y = 13;
    for (long i = 0; i < B; ++i) {
        b.st.last_selected = 2;
        observe(b.st, 2, 0.0);
    }
    for (long i = 0; i < y; ++i) {
        b.st.last_selected = 2;
        observe(b.st, 2, 1.0);
    }
    CHECK(empirical_mean(b.st, 2) == doctest::Approx(double(y) / double(B + y)).epsilon(1e-15));
    // The crossover threshold is hit exactly: y/(y+y) compares equal to 0.5.
    for (long i = 0; i < B - y; ++i) {
        b.st.last_selected = 2;
        observe(b.st, 2, 1.0);
    }
    CHECK(empirical_mean(b.st, 2) == 0.5);

    // A constant arm keeps a constant mean at every count.
    for (int i = 1; i <= 40; ++i) {
        b.st.last_selected = 1;
        observe(b.st, 1, 0.5);
        CHECK(empirical_mean(b.st, 1) == 0.5);
    }
}

TEST_CASE("water-filling: both ucb variants equalize pulls on all-zero rewards") {
    for (PolicySpec spec : {PolicySpec::ucb_known(), PolicySpec::ucb_anytime()}) {
        for (int K : {2, 3, 5}) {
            const long c = 50;
            for (std::uint64_t seed = 0; seed < 25; ++seed) {
                PolicyState st = init_policy(spec, K, K * c);
                TieResolver tie = TieResolver::uniform();
                auto policy = make_stream(seed, 0, Stream::Policy);
                auto ties = make_stream(seed, 0, Stream::Tie);
                for (long t = 1; t <= K * c; ++t) {
                    int arm = select_arm(st, tie, policy, ties);
                    observe(st, arm, 0.0);
                    long lo = st.counts[0], hi = st.counts[0];
                    for (long n : st.counts) {
                        lo = std::min(lo, n);
                        hi = std::max(hi, n);
                    }
                    CHECK(hi - lo <= 1);
                    if (t % K == 0)
                        for (long n : st.counts) CHECK(n == t / K);
                }
            }
        }
    }
}

TEST_CASE("etc never revisits its committed arm") {
    const int m = 5, K = 3;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Bench b(PolicySpec::etc(m), K, 200);
        b.policy = make_stream(seed, 0, Stream::Policy);
        b.ties = make_stream(seed, 0, Stream::Tie);
        auto rewards = make_stream(seed, 0, Stream::Reward);
        int committed = 0;
        for (long t = 1; t <= 200; ++t) {
            int arm = select_arm(b.st, b.tie, b.policy, b.ties);
            if (t > long(m) * K) {
                if (committed == 0) committed = arm;
                CHECK(arm == committed);
            }
            observe(b.st, arm, canonical(rewards) < 0.5 ? 1.0 : 0.0);
        }
    }
}

TEST_CASE("restart wrapper resets the inner policy at segment boundaries") {
    // d=2, T=10: the boundary is after round floor(T/d) = 5.
    PolicyState st = init_policy(PolicySpec::restarted(PolicySpec::eps_greedy(0.0), 2), 2, 10);
    TieResolver tie = TieResolver::uniform();
    auto policy = make_stream(3, 0, Stream::Policy);
    auto ties = make_stream(3, 0, Stream::Tie);
    for (int t = 1; t <= 5; ++t) {
        int arm = select_arm(st, tie, policy, ties);
        observe(st, arm, 1.0);
    }
    CHECK(st.restart_segment == 1);
    CHECK(st.inner->t == 1);
    CHECK(st.inner->counts == std::vector<long>{0, 0});
    CHECK(st.counts[0] + st.counts[1] == 5); // wrapper totals persist
}

TEST_CASE("restart segment geometry") {
    CHECK(restart_segment_start(4, 4000, 1) == 1);
    CHECK(restart_segment_start(4, 4000, 2) == 1001);
    CHECK(restart_segment_length(4, 4000, 3) == 1000);
    CHECK(restart_segment_of(2, 10, 5) == 0);
    CHECK(restart_segment_of(2, 10, 6) == 1);
    // Uneven split covers every round exactly once.
    long total = 0;
    for (int i = 1; i <= 3; ++i) total += restart_segment_length(3, 10, i);
    CHECK(total == 10);
}

TEST_CASE("tie resolver modes") {
    auto ties = make_stream(5, 0, Stream::Tie);
    TieResolver fixed = TieResolver::fixed(2);
    CHECK(fixed.pick({1, 2, 3}, ties) == 2);
    CHECK(fixed.pick({2}, ties) == 2);
    CHECK_THROWS_AS(fixed.pick({1, 3}, ties), std::logic_error);

    TieResolver seq = TieResolver::sequence({3, 1});
    CHECK(seq.pick({1, 3}, ties) == 3);
    CHECK(seq.pick({1, 2}, ties) == 1);
    int arm = seq.pick({1, 2}, ties); // exhausted: uniform fallback
    CHECK((arm == 1 || arm == 2));

    TieResolver uni = TieResolver::uniform();
    long hits[2] = {0, 0};
    for (int i = 0; i < 20000; ++i) hits[uni.pick({1, 2}, ties) - 1] += 1;
    CHECK(std::abs(hits[0] - 10000) < 3 * std::sqrt(20000 * 0.25)); // 3 sigma

    // Fixed agrees with Uniform whenever the argmax set is a singleton.
    for (int a : {1, 2, 3})
        CHECK(TieResolver::fixed(9).pick({a}, ties) == TieResolver::uniform().pick({a}, ties));
}

TEST_CASE("policy designations parse and format") {
    CHECK(format_policy(parse_policy("etc:m=20")) == "etc:m=20");
    CHECK(format_policy(parse_policy("eps-greedy:eps=0.1")) == "eps-greedy:eps=0.1");
    CHECK(format_policy(parse_policy("ucb-known")) == "ucb-known");
    CHECK(format_policy(parse_policy("ucb-anytime")) == "ucb-anytime");
    CHECK(format_policy(parse_policy("restart:d=4:ucb-known")) == "restart:d=4:ucb-known");
    CHECK(format_policy(parse_policy("restart:d=2:etc:m=7")) == "restart:d=2:etc:m=7");

    CHECK(parse_policy("restart:d=4:ucb-known").restarts == 4);
    CHECK(parse_policy("eps-greedy:eps=0.25").eps == doctest::Approx(0.25));

    CHECK_THROWS_AS(parse_policy("thompson"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy("etc:m=x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy("restart:d=2:restart:d=2:ucb-known"), std::invalid_argument);
}

TEST_CASE("select_arm refuses exhausted episodes") {
    Bench b(PolicySpec::eps_greedy(0.0), 2, 2);
    b.step(0.1);
    b.step(0.2);
    CHECK_THROWS_AS(select_arm(b.st, b.tie, b.policy, b.ties), std::out_of_range);
}
