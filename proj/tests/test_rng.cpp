#include "covsim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace covsim;

TEST_CASE("derive_seed separates streams") {
    std::set<std::uint64_t> seeds;
    seeds.insert(derive_seed(1, 0, "walk", 0));
    seeds.insert(derive_seed(1, 0, "walk", 1));
    seeds.insert(derive_seed(1, 0, "timer", 0));
    seeds.insert(derive_seed(1, 1, "walk", 0));
    seeds.insert(derive_seed(2, 0, "walk", 0));
    CHECK(seeds.size() == 5);
    CHECK(derive_seed(1, 0, "walk", 0) == derive_seed(1, 0, "walk", 0));
}

TEST_CASE("identical seeds give identical sequences") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("uniform01 stays in [0,1) with the right mean") {
    RandomStream rng(3);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform(lo,hi) covers the interval") {
    RandomStream rng(4);
    double mn = 1e9, mx = -1e9, sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform(2.0, 5.0);
        REQUIRE(u >= 2.0);
        REQUIRE(u < 5.0);
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(3.5).epsilon(0.005));
    CHECK(mn < 2.01);
    CHECK(mx > 4.99);
}

TEST_CASE("uniform_int covers all values") {
    RandomStream rng(5);
    std::vector<int> counts(9, 0);
    for (int i = 0; i < 90000; ++i) {
        int v = rng.uniform_int(9);
        REQUIRE(v >= 0);
        REQUIRE(v < 9);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int c : counts) {
        CHECK(c > 9000);
        CHECK(c < 11000);
    }
}

TEST_CASE("gaussian moments") {
    RandomStream rng(6);
    double sum = 0.0, ss = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double g = rng.gaussian(1.0, 2.0);
        sum += g;
        ss += g * g;
    }
    double mean = sum / n;
    double var = ss / n - mean * mean;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("bernoulli rate") {
    RandomStream rng(7);
    int hits = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        hits += rng.bernoulli(2e-3) ? 1 : 0;
    }
    CHECK(static_cast<double>(hits) / n == doctest::Approx(2e-3).epsilon(0.1));
    RandomStream z(8);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(z.bernoulli(0.0));
    }
}
