#include <doctest.h>

#include <cmath>
#include <vector>

#include "frontier/rng.hpp"
#include "support/oracles.hpp"

using namespace frontier;

TEST_SUITE("rng") {

TEST_CASE("identical identity and call sequence reproduce exactly") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("fork depends on identity, not on consumed state") {
    RngStream fresh(9, 3);
    RngStream drained(9, 3);
    for (int i = 0; i < 17; ++i) drained.next_u64();
    RngStream f1 = fresh.fork(5);
    RngStream f2 = drained.fork(5);
    for (int i = 0; i < 32; ++i) CHECK(f1.next_u64() == f2.next_u64());
}

TEST_CASE("sibling forks diverge") {
    RngStream root(1, 0);
    RngStream a = root.fork(0);
    RngStream b = root.fork(1);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform01 stays in [0,1) and passes a uniformity test") {
    RngStream rng(123, 0);
    std::vector<double> draws(10000);
    for (double& d : draws) {
        d = rng.uniform01();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
    const double crit = 1.628 / std::sqrt(static_cast<double>(draws.size()));
    CHECK(test::ks_statistic_uniform(draws, 0.0, 1.0) < crit);
}

TEST_CASE("uniform respects bounds and degenerate intervals") {
    RngStream rng(5, 0);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-3.0, 2.5);
        CHECK(v >= -3.0);
        CHECK(v < 2.5);
    }
    CHECK(rng.uniform(4.0, 4.0) == 4.0);
}

TEST_CASE("uniform_index covers [0,n) without visible bias") {
    RngStream rng(77, 0);
    const std::size_t n = 7;
    const int draws = 70000;
    std::vector<int> counts(n, 0);
    for (int i = 0; i < draws; ++i) {
        const std::size_t idx = rng.uniform_index(n);
        REQUIRE(idx < n);
        ++counts[idx];
    }
    const double p = 1.0 / static_cast<double>(n);
    const double sigma = std::sqrt(draws * p * (1.0 - p));
    for (int c : counts) CHECK(std::abs(c - draws * p) < 3.0 * sigma);
}

TEST_CASE("normal has standard moments") {
    RngStream rng(31, 0);
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal();
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("normal draw count is a pure function of call count") {
    RngStream a(8, 2);
    RngStream b(8, 2);
    (void)a.normal();
    (void)b.normal();
    CHECK(a.next_u64() == b.next_u64());
}

}  // TEST_SUITE
