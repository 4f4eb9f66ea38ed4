#include <algorithm>
#include <vector>

#include "doctest.h"
#include "isle/sorting.hpp"

using namespace isle;

namespace {

Permutation perm(std::vector<std::int32_t> entries) { return Permutation{std::move(entries)}; }

// Quadratic DP oracle for the longest ascending subsequence.
std::uint32_t las_dp(const Permutation& p) {
    const std::size_t n = p.size();
    std::vector<std::uint32_t> best(n, 1);
    std::uint32_t result = 1;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (p.entries[j] < p.entries[i]) {
                best[i] = std::max(best[i], best[j] + 1);
            }
        }
        result = std::max(result, best[i]);
    }
    return result;
}

std::vector<Permutation> all_permutations(std::uint32_t n) {
    Permutation p = identity_permutation(n);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.entries.begin(), p.entries.end()));
    return out;
}

}  // namespace

TEST_CASE("exchange") {
    CHECK(exchange(perm({1, 2, 3}), 0, 1) == perm({2, 1, 3}));
    CHECK(exchange(perm({4, 1, 5, 2, 6, 3}), 0, 5) == perm({3, 1, 5, 2, 6, 4}));
    // involution
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Permutation p = random_permutation(7, rng);
        const std::size_t i = rng.below(7);
        std::size_t j = rng.below(6);
        if (j >= i) ++j;
        CHECK(exchange(exchange(p, i, j), i, j) == p);
    }
    CHECK_THROWS(exchange(perm({1, 2, 3}), 1, 1));
}

TEST_CASE("jump") {
    // positions are 0-based: moving the entry at position 1 to position 4
    CHECK(jump(perm({1, 2, 3, 4, 5, 6}), 1, 4) == perm({1, 3, 4, 5, 2, 6}));
    CHECK(jump(perm({1, 3, 4, 5, 2, 6}), 4, 1) == perm({1, 2, 3, 4, 5, 6}));
    // jump(i,j) then jump(j,i) is the identity
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const Permutation p = random_permutation(8, rng);
        const std::size_t i = rng.below(8);
        std::size_t j = rng.below(7);
        if (j >= i) ++j;
        CHECK(jump(jump(p, i, j), j, i) == p);
    }
    CHECK_THROWS(jump(perm({1, 2, 3}), 2, 2));
}

TEST_CASE("sortedness measures") {
    CHECK(inv(perm({1, 2, 3, 4})) == 6);
    CHECK(inv(perm({4, 3, 2, 1})) == 0);
    CHECK(inv(perm({2, 1, 3})) == 2);

    CHECK(ham(perm({1, 2, 3})) == 3);
    CHECK(ham(perm({2, 1, 3})) == 1);

    CHECK(las(perm({1, 2, 3, 4})) == 4);
    CHECK(las(perm({4, 3, 2, 1})) == 1);
    CHECK(las(perm({2, 1, 3})) == 2);

    CHECK(exc(perm({1, 2, 3})) == 0);
    CHECK(exc(perm({2, 3, 1})) == 2);
    CHECK(exc(perm({2, 1, 4, 3})) == 2);
}

TEST_CASE("las agrees with the quadratic dp oracle") {
    for (const Permutation& p : all_permutations(6)) {
        CHECK(las(p) == las_dp(p));
    }
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Permutation p = random_permutation(20, rng);
        CHECK(las(p) == las_dp(p));
    }
}

TEST_CASE("measures agree on what sorted means") {
    for (std::uint32_t n : {4u, 5u, 6u}) {
        const std::uint32_t pairs = n * (n - 1) / 2;
        for (const Permutation& p : all_permutations(n)) {
            const bool sorted = p == identity_permutation(n);
            CHECK((inv(p) == pairs) == sorted);
            CHECK((ham(p) == n) == sorted);
            CHECK((las(p) == n) == sorted);
            CHECK((exc(p) == 0) == sorted);
            CHECK(ham(p) != n - 1);  // exactly one misplaced element is impossible
        }
    }
}

TEST_CASE("worst_inv_permutation") {
    CHECK(worst_inv_permutation(6) == perm({4, 1, 5, 2, 6, 3}));
    CHECK(worst_inv_permutation(4) == perm({3, 1, 4, 2}));
    for (std::uint32_t n : {4u, 8u, 10u, 16u}) {
        CHECK(is_valid_permutation(worst_inv_permutation(n)));
    }
    CHECK_THROWS(worst_inv_permutation(7));
    CHECK_THROWS(worst_inv_permutation(2));
}

TEST_CASE("max_single_op_inv_gain") {
    CHECK(max_single_op_inv_gain(identity_permutation(6)) <= 0);
    CHECK(max_single_op_inv_gain(perm({2, 1, 3})) == 1);
}

TEST_CASE("mutations preserve validity") {
    Rng rng(21);
    Permutation p = random_permutation(12, rng);
    for (int step = 0; step < 100000; ++step) {
        p = mutate_sorting(p, rng);
        if (step % 1000 == 0) {
            REQUIRE(is_valid_permutation(p));
        }
    }
    REQUIRE(is_valid_permutation(p));
}

TEST_CASE("sorting problem wiring") {
    Rng rng(3);
    const SortingProblem maximizing(6, SortMeasure::ham);
    const Genotype g = maximizing.sample_initial(rng);
    CHECK(is_valid_permutation(Permutation{g}));
    CHECK(maximizing.fitness(identity_permutation(6).entries).scalar == 6.0);
    CHECK(maximizing.is_optimal(identity_permutation(6).entries));
    CHECK(maximizing.fitness(g).direction == Direction::maximize);

    const SortingProblem minimizing(6, SortMeasure::exc);
    CHECK(minimizing.fitness(g).direction == Direction::minimize);
    CHECK(minimizing.is_optimal(identity_permutation(6).entries));
    CHECK_FALSE(minimizing.is_optimal(perm({2, 1, 3, 4, 5, 6}).entries));
}
