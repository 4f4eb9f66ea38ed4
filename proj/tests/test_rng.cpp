#include <cmath>
#include <vector>

#include "doctest.h"
#include "isle/rng.hpp"

using namespace isle;

TEST_CASE("derived streams are reproducible and distinct") {
    Rng a = derive_island_rng(42, 0, 0);
    Rng b = derive_island_rng(42, 0, 0);
    Rng c = derive_island_rng(42, 1, 0);
    Rng d = derive_island_rng(42, 0, 1);
    bool c_differs = false, d_differs = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next();
        CHECK(va == b.next());
        c_differs = c_differs || va != c.next();
        d_differs = d_differs || va != d.next();
    }
    CHECK(c_differs);
    CHECK(d_differs);
}

TEST_CASE("below is within range and roughly uniform") {
    Rng rng(7);
    std::vector<int> counts(7, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const std::uint64_t v = rng.below(7);
        REQUIRE(v < 7);
        ++counts[v];
    }
    for (int c : counts) {
        // Expected 10000 per bucket; 5 sigma is about 490.
        CHECK(std::abs(c - 10000) < 600);
    }
}

TEST_CASE("poisson(1) matches the closed-form pmf") {
    Rng rng(12345);
    const int draws = 1000000;
    std::vector<int> counts(16, 0);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const unsigned s = poisson1_sample(rng);
        sum += s;
        if (s < counts.size()) {
            ++counts[s];
        }
    }
    const double inv_e = std::exp(-1.0);
    // pmf(k) = e^-1 / k!
    CHECK(std::fabs(double(counts[0]) / draws - inv_e) < 0.003);
    CHECK(std::fabs(double(counts[1]) / draws - inv_e) < 0.003);
    CHECK(std::fabs(double(counts[2]) / draws - inv_e / 2.0) < 0.003);
    const double mean = sum / draws;
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);
}

TEST_CASE("uniform01 stays in [0,1)") {
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}
