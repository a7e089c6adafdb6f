#include <doctest.h>

#include "oracle_harness.hpp"

#include <random>

using namespace moss;
using moss::testing::contract_match;
using moss::testing::random_instance;
using oracle::OracleInstance;
using oracle::OracleMatch;
using oracle::oracle_match;

TEST_CASE("oracle reproduces the six-operator auction") {
    OracleInstance instance;
    instance.asks = {{2000000, 20, 1}, {1600000, 10, 2}, {2400000, 15, 3}};
    instance.bids = {{1500000, 10, 4}, {2500000, 12, 5}, {1800000, 8, 6}};
    auto matches = oracle_match(instance);
    REQUIRE(matches.size() == 2);
    CHECK(matches[0] == OracleMatch{2, 5, 10, 2050000});
    CHECK(matches[1] == OracleMatch{1, 5, 2, 2250000});
}

TEST_CASE("oracle on crossed books is empty") {
    OracleInstance instance;
    instance.asks = {{50, 10, 1}, {60, 5, 2}};
    instance.bids = {{40, 10, 1}, {10, 5, 2}};
    CHECK(oracle_match(instance).empty());
}

TEST_CASE("one buyer absorbs three sellers at three midpoints") {
    OracleInstance instance;
    instance.asks = {{10, 10, 1}, {20, 10, 2}, {30, 10, 3}};
    instance.bids = {{100, 30, 1}};
    auto matches = oracle_match(instance);
    REQUIRE(matches.size() == 3);
    CHECK(matches[0] == OracleMatch{1, 1, 10, 55});
    CHECK(matches[1] == OracleMatch{2, 1, 10, 60});
    CHECK(matches[2] == OracleMatch{3, 1, 10, 65});
}

TEST_CASE("odd price sums floor the midpoint") {
    OracleInstance instance;
    instance.asks = {{10, 5, 1}};
    instance.bids = {{15, 5, 1}};
    auto matches = oracle_match(instance);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].price_gwei == 12);  // floor(25 / 2)
    CHECK(contract_match(instance) == matches);
}

TEST_CASE("contract and oracle agree on random instances") {
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 60; ++i) {
        OracleInstance instance = random_instance(rng);
        auto expected = oracle_match(instance);
        auto actual = contract_match(instance);
        REQUIRE_MESSAGE(actual == expected, "divergence on instance ", i);
    }
}
