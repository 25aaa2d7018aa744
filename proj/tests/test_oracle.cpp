#include <doctest.h>

#include <random>
#include <vector>

#include "pooltest/oracle.hpp"

using namespace pooltest;

namespace {

Pool pool(std::vector<std::uint32_t> members) { return Pool::of(std::move(members)); }

}  // namespace

TEST_CASE("pool outcomes are intersection tests against the hidden set") {
    // Hidden sample 2: {0,1} misses, {2,3} hits.
    Oracle oracle(6, {2}, 2);
    const auto out = oracle.run_stage({pool({0, 1}), pool({2, 3})});
    REQUIRE(out.size() == 2);
    CHECK_FALSE(out[0]);
    CHECK(out[1]);

    Oracle empty_hidden(6, {}, 2);
    const auto all_neg = empty_hidden.run_stage({pool({0, 1}), pool({2, 3}), pool({0, 5})});
    CHECK(std::none_of(all_neg.begin(), all_neg.end(), [](bool b) { return b; }));

    Oracle two(6, {0, 1}, 2);
    CHECK(two.run_stage({pool({1})}) == std::vector<bool>{true});
}

TEST_CASE("empty pools are allowed and always negative") {
    Oracle oracle(4, {0, 1, 2, 3}, 4);
    const auto out = oracle.run_stage({pool({}), pool({0})});
    CHECK_FALSE(out[0]);
    CHECK(out[1]);
}

TEST_CASE("oracle rejects malformed input") {
    Oracle oracle(4, {1}, 2);
    CHECK_THROWS_AS(oracle.run_stage({}), std::invalid_argument);  // empty batch is not a stage
    CHECK_THROWS_AS(oracle.run_stage({Pool{{0, 4}}}), std::invalid_argument);  // member >= t
    CHECK_THROWS_AS(oracle.run_stage({Pool{{2, 1}}}), std::invalid_argument);  // not ascending
    CHECK_THROWS_AS(oracle.run_stage({Pool{{1, 1}}}), std::invalid_argument);  // duplicate

    CHECK_THROWS_AS(Oracle(4, {4}, 2), std::invalid_argument);     // defect out of range
    CHECK_THROWS_AS(Oracle(4, {0, 0}, 2), std::invalid_argument);  // duplicate defect
    CHECK_THROWS_AS(Oracle(4, {0, 1, 2}, 2), std::invalid_argument);  // above the cap
    CHECK_THROWS_AS(Oracle(0, {}, 2), std::invalid_argument);
}

TEST_CASE("total tests sums the submitted batch sizes") {
    Oracle oracle(40, {}, 2);
    CHECK(oracle.total_tests() == 0);
    CHECK(total_tests(oracle.transcript()) == 0);

    std::vector<std::size_t> sizes = {8, 6, 4, 2};
    for (std::size_t n : sizes) {
        std::vector<Pool> batch;
        for (std::size_t i = 0; i < n; ++i) batch.push_back(pool({static_cast<std::uint32_t>(i)}));
        oracle.run_stage(batch);
    }
    CHECK(oracle.total_tests() == 20);
    CHECK(oracle.stages_used() == 4);

    Oracle single(40, {}, 2);
    single.run_stage({pool({0}), pool({1}), pool({2}), pool({3}), pool({4})});
    CHECK(single.total_tests() == 5);
    CHECK(single.stages_used() == 1);
}

TEST_CASE("transcript replay reproduces every recorded outcome") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t t = 5 + rng() % 20;
        std::vector<std::uint32_t> hidden;
        for (std::uint32_t j = 0; j < t; ++j)
            if (rng() % 5 == 0) hidden.push_back(j);
        Oracle oracle(t, hidden, t);

        const std::size_t n_stages = 1 + rng() % 4;
        for (std::size_t st = 0; st < n_stages; ++st) {
            std::vector<Pool> batch;
            const std::size_t n_pools = 1 + rng() % 5;
            for (std::size_t p = 0; p < n_pools; ++p) {
                std::vector<std::uint32_t> members;
                for (std::uint32_t j = 0; j < t; ++j)
                    if (rng() % 3 == 0) members.push_back(j);
                batch.push_back(pool(std::move(members)));
            }
            oracle.run_stage(batch);
        }

        // Replay: recompute each pool against the known hidden set.
        for (const Stage& stage : oracle.transcript().stages) {
            REQUIRE(stage.pools.size() == stage.outcomes.size());
            for (std::size_t p = 0; p < stage.pools.size(); ++p) {
                bool expect = false;
                for (std::uint32_t d : hidden)
                    if (stage.pools[p].contains(d)) expect = true;
                CHECK(stage.outcomes[p] == expect);
            }
        }
    }
}

TEST_CASE("declare records a sorted answer") {
    Oracle oracle(10, {3, 7}, 2);
    CHECK_FALSE(oracle.transcript().answered);
    oracle.declare({7, 3});
    CHECK(oracle.transcript().answered);
    CHECK(oracle.transcript().answer == std::vector<std::uint32_t>{3, 7});
}

TEST_CASE("pool normalization sorts and deduplicates") {
    const Pool p = Pool::of({5, 1, 3, 1});
    CHECK(p.members == std::vector<std::uint32_t>{1, 3, 5});
    CHECK(p.contains(3));
    CHECK_FALSE(p.contains(2));
}
