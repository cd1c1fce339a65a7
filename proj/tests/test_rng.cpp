#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "forge/rng.hpp"

using namespace forge;

TEST_CASE("same seed gives identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("stable_hash depends on both seed and id") {
    CHECK(stable_hash(1, "s1") != stable_hash(2, "s1"));
    CHECK(stable_hash(1, "s1") != stable_hash(1, "s2"));
    CHECK(stable_hash(7, "abc") == stable_hash(7, "abc"));
}

TEST_CASE("derive_seed separates substreams") {
    std::set<uint64_t> seen;
    for (uint64_t k = 0; k < 16; ++k) seen.insert(derive_seed(123, k));
    CHECK(seen.size() == 16);
}

TEST_CASE("below is in range and roughly uniform") {
    Rng rng(3);
    int counts[5] = {0};
    for (int i = 0; i < 50000; ++i) {
        uint64_t v = rng.below(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) {
        CHECK(c > 9500);
        CHECK(c < 10500);
    }
}

TEST_CASE("next_double stays in [0,1)") {
    Rng rng(9);
    for (int i = 0; i < 10000; ++i) {
        double d = rng.next_double();
        REQUIRE(d >= 0.0);
        REQUIRE(d < 1.0);
    }
}

TEST_CASE("poisson mean is close to lambda") {
    Rng rng(11);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += rng.poisson(3.0);
    double mean = sum / n;
    CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
}
