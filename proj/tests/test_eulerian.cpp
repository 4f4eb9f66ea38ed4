#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "doctest.h"
#include "isle/eulerian.hpp"

using namespace isle;

namespace {

// Square cycle a-b-c-d-a: vertices 0..3, edges in traversal order.
EulerGraph square_cycle() {
    return EulerGraph(4, {{0, 1, -1}, {1, 2, -1}, {2, 3, -1}, {3, 0, -1}});
}

EdgePermutation order_of(std::vector<std::int32_t> ids) { return EdgePermutation{std::move(ids)}; }

// Permutation whose prefix traverses the first cycle of a double-cycle
// instance starting at vertex `start` (clockwise); suffix holds the rest.
EdgePermutation closed_first_cycle(const EulerGraph& g, std::uint32_t start) {
    const std::uint32_t h = g.m() / 2;
    EdgePermutation p;
    for (std::uint32_t k = 0; k < h; ++k) {
        p.order.push_back(static_cast<std::int32_t>((start + k) % h));
    }
    for (std::uint32_t k = h; k < g.m(); ++k) {
        p.order.push_back(static_cast<std::int32_t>(k));
    }
    return p;
}

}  // namespace

TEST_CASE("walk semantics on the square cycle") {
    const EulerGraph g = square_cycle();
    const WalkInfo full = walk_length(order_of({0, 1, 2, 3}), g);
    CHECK(full.length == 4);
    CHECK(full.start_vertex == 0);
    CHECK(full.end_vertex == 0);

    const WalkInfo broken = walk_length(order_of({0, 2, 1, 3}), g);
    CHECK(broken.length == 1);  // edges 0 and 2 share no vertex
}

TEST_CASE("chain semantics: the running end must be continued") {
    // e0={a,b}, e1={b,c}, e2={b,d} plus closure edges to keep degrees even.
    const EulerGraph g(4, {{0, 1, -1}, {1, 2, -1}, {1, 3, -1}, {2, 3, -1}, {0, 1, -1}});
    const WalkInfo info = walk_length(order_of({0, 1, 2, 3, 4}), g);
    // After a-b-c the walk must continue at c; e2={b,d} touches the walk but
    // not its end.
    CHECK(info.length == 2);
    CHECK(info.start_vertex == 0);
    CHECK(info.end_vertex == 2);
}

TEST_CASE("length-1 walks report stored endpoint order") {
    const EulerGraph g = square_cycle();
    const WalkInfo info = walk_length(order_of({0, 2, 1, 3}), g);
    CHECK(info.start_vertex == 0);
    CHECK(info.end_vertex == 1);
}

TEST_CASE("jump_edges") {
    const EdgePermutation p = order_of({0, 1, 2, 3});
    CHECK(jump_edges(p, 3, 0) == order_of({3, 0, 1, 2}));
    CHECK(jump_edges(p, 0, 3) == order_of({1, 2, 3, 0}));
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const EdgePermutation q = random_edge_permutation(9, rng);
        const std::size_t i = rng.below(9);
        std::size_t j = rng.below(8);
        if (j >= i) ++j;
        CHECK(jump_edges(jump_edges(q, i, j), j, i) == q);
    }
    CHECK_THROWS(jump_edges(p, 1, 1));
}

TEST_CASE("unrestricted jumps hit every ordered pair uniformly") {
    const std::size_t m = 4;
    Rng rng(11);
    const EdgePermutation p = identity_edge_permutation(m);
    std::map<Genotype, int> counts;
    const int draws = 120000;
    for (int d = 0; d < draws; ++d) {
        ++counts[mutate_unrestricted(p, rng).order];
    }
    // 12 ordered pairs produce 9 distinct outcomes: adjacent transpositions
    // arise from both (i,i+1) and (i+1,i).
    const double expected_single = draws / 12.0;
    for (const auto& [order, count] : counts) {
        CHECK(is_valid_edge_permutation(EdgePermutation{order}, m));
        const double ratio = count / expected_single;
        CHECK(ratio > 0.85);
        CHECK(ratio < 2.2);
    }
    CHECK(counts.size() == 9);
}

TEST_CASE("asymmetric jumps always prepend") {
    Rng rng(13);
    const EdgePermutation p = order_of({0, 1, 2});
    for (int trial = 0; trial < 1000; ++trial) {
        const EdgePermutation q = mutate_asymmetric(p, rng);
        CHECK((q == order_of({1, 0, 2}) || q == order_of({2, 0, 1})));
    }
}

TEST_CASE("symmetric jumps keep both rotations of a closed cycle available") {
    const EulerGraph g = make_double_cycle(12);
    const std::uint32_t h = 6;
    // Closed at vertex 2: one rotation in either direction stays away from
    // the junction, so the walk cannot extend.
    const EdgePermutation p = closed_first_cycle(g, 2);
    REQUIRE(walk_length(p, g).length == h);

    const EdgePermutation forward = jump_edges(p, 0, h - 1);
    const EdgePermutation backward = jump_edges(p, h - 1, 0);
    REQUIRE(walk_length(forward, g).length == h);
    REQUIRE(walk_length(backward, g).length == h);

    Rng rng(17);
    bool saw_forward = false, saw_backward = false;
    for (int trial = 0; trial < 20000; ++trial) {
        const EdgePermutation q = mutate_symmetric(p, g, rng);
        CHECK(is_valid_edge_permutation(q, g.m()));
        saw_forward = saw_forward || q == forward;
        saw_backward = saw_backward || q == backward;
    }
    CHECK(saw_forward);
    CHECK(saw_backward);

    const EdgePermutation optimal = [] {
        EdgePermutation full;
        full.order = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
        return full;
    }();
    REQUIRE(walk_length(optimal, make_double_cycle(12)).length == 12);
    CHECK_THROWS(mutate_symmetric(optimal, make_double_cycle(12), rng));
}

TEST_CASE("walk acceptance") {
    CHECK(accept_walk_offspring(5, 5));
    CHECK_FALSE(accept_walk_immigrant(5, 5));
    CHECK(accept_walk_offspring(5, 6));
    CHECK(accept_walk_immigrant(5, 6));
    CHECK_FALSE(accept_walk_offspring(5, 4));
    CHECK_FALSE(accept_walk_immigrant(5, 4));
}

TEST_CASE("double-cycle instance structure") {
    const EulerGraph g = make_double_cycle(12);
    CHECK(g.n() == 11);
    CHECK(g.m() == 12);
    REQUIRE(g.shared_vertex().has_value());
    std::vector<int> degree(g.n(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.u];
        ++degree[e.v];
    }
    int fours = 0, twos = 0;
    for (int d : degree) {
        if (d == 4) ++fours;
        if (d == 2) ++twos;
    }
    CHECK(fours == 1);
    CHECK(twos == 10);
    CHECK(degree[*g.shared_vertex()] == 4);

    const EulerGraph small = make_double_cycle(6);  // two triangles
    CHECK(small.n() == 5);
    CHECK_THROWS(make_double_cycle(7));
    CHECK_THROWS(make_double_cycle(4));
}

TEST_CASE("is_euler_optimal") {
    const EulerGraph g = square_cycle();
    CHECK(is_euler_optimal(order_of({0, 1, 2, 3}), g));
    CHECK_FALSE(is_euler_optimal(order_of({0, 2, 1, 3}), g));

    // Both cycles of the double-cycle instance in rotation order, starting
    // and ending at the shared vertex.
    const EulerGraph dc = make_double_cycle(6);
    CHECK(is_euler_optimal(order_of({0, 1, 2, 3, 4, 5}), dc));
}

TEST_CASE("on a closed cycle the only walk-changing accepted jumps are the rotations") {
    for (std::uint32_t m : {8u, 12u, 16u}) {
        const EulerGraph g = make_double_cycle(m);
        const std::uint32_t h = m / 2;
        const EdgePermutation p = closed_first_cycle(g, 2 % h);  // not at the shared vertex
        REQUIRE(walk_length(p, g).length == h);
        const Genotype prefix(p.order.begin(), p.order.begin() + h);

        std::set<std::pair<std::size_t, std::size_t>> walk_changing;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                const EdgePermutation q = jump_edges(p, i, j);
                const WalkInfo info = walk_length(q, g);
                if (info.length < h) {
                    continue;  // rejected
                }
                CHECK(info.length == h);  // nothing can extend away from the junction
                const Genotype new_prefix(q.order.begin(), q.order.begin() + info.length);
                if (new_prefix != prefix) {
                    walk_changing.insert({i, j});
                }
            }
        }
        const std::set<std::pair<std::size_t, std::size_t>> rotations = {{0, h - 1}, {h - 1, 0}};
        CHECK(walk_changing == rotations);
    }
}

TEST_CASE("walk length ignores jumps entirely inside the far suffix") {
    Rng rng(29);
    const EulerGraph g = make_double_cycle(14);
    for (int trial = 0; trial < 2000; ++trial) {
        const EdgePermutation p = random_edge_permutation(g.m(), rng);
        const std::uint32_t len = walk_length(p, g).length;
        if (len + 2 >= g.m()) {
            continue;
        }
        const std::size_t span = g.m() - (len + 1);
        const std::size_t i = len + 1 + rng.below(span);
        std::size_t j = len + 1 + rng.below(span - 1);
        if (j >= i) ++j;
        CHECK(walk_length(jump_edges(p, i, j), g).length == len);
    }
}

TEST_CASE("accepted local-search walks only grow; swaps touch one boundary edge at most") {
    // An accepted jump can exchange a boundary edge of the walk for an
    // alternative continuation: a length-2 walk can reorient around its
    // first edge, a walk whose second-to-last vertex is the junction can
    // trade its final edge for one of the other cycle's edges, and removing
    // a boundary edge can expose suffix edges that chain even further.
    // Interior edges can never be dropped (truncating the chain loses
    // fitness).
    const EulerGraph g = make_double_cycle(10);
    const EulerProblem problem(g, EulerOperator::unrestricted, MutationScheme::rls);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng = derive_island_rng(seed, 0, 0);
        Genotype current = problem.sample_initial(rng);
        std::uint32_t len = walk_length(EdgePermutation{current}, g).length;
        for (int step = 0; step < 4000 && len < g.m(); ++step) {
            const Genotype candidate = problem.mutate(current, rng);
            const std::uint32_t cand_len = walk_length(EdgePermutation{candidate}, g).length;
            if (accept_walk_offspring(len, cand_len)) {
                CHECK(cand_len >= len);
                if (len >= 2) {
                    const std::set<std::int32_t> after(candidate.begin(),
                                                       candidate.begin() + cand_len);
                    std::vector<std::int32_t> dropped;
                    for (std::uint32_t k = 0; k < len; ++k) {
                        if (after.count(current[k]) == 0) {
                            dropped.push_back(current[k]);
                        }
                    }
                    CHECK(dropped.size() <= 1);
                    for (std::int32_t id : dropped) {
                        const bool boundary = id == current[0] || id == current[len - 1];
                        CHECK(boundary);
                    }
                }
                current = candidate;
                len = cand_len;
            }
        }
    }
}

TEST_CASE("decision observer classifies junction crossings") {
    const EulerGraph g = make_double_cycle(8);  // first cycle edges 0..3, second 4..7
    std::vector<ProbeEvent> events;

    SUBCASE("first long walk already straddles: not applicable") {
        auto observer = make_decision_observer(g, 1, false);
        observer->observe(0, 0, {3, 4, 0, 1, 2, 5, 6, 7}, FitnessValue::maximize(2), events);
        REQUIRE(events.size() == 1);
        CHECK(events[0].tag == kDecisionNotApplicable);
        CHECK(observer->finished() == false);
    }
    SUBCASE("walk passes the junction inside its own cycle: same cycle") {
        auto observer = make_decision_observer(g, 1, true);
        observer->observe(0, 0, {3, 0, 1, 2, 4, 5, 6, 7}, FitnessValue::maximize(4), events);
        REQUIRE(events.size() == 1);
        CHECK(events[0].tag == kDecisionSameCycle);
        CHECK(observer->finished());
    }
    SUBCASE("walk grows first, then crosses: opposite cycle") {
        auto observer = make_decision_observer(g, 1, true);
        // length-2 walk away from the junction
        observer->observe(0, 0, {1, 2, 0, 3, 4, 5, 6, 7}, FitnessValue::maximize(2), events);
        CHECK(events.empty());
        // now a walk that crosses the junction into the other cycle
        observer->observe(1, 0, {2, 3, 4, 0, 1, 5, 6, 7}, FitnessValue::maximize(3), events);
        REQUIRE(events.size() == 1);
        CHECK(events[0].tag == kDecisionOppositeCycle);
        CHECK(events[0].generation == 1);
    }
    SUBCASE("events fire once per island") {
        auto observer = make_decision_observer(g, 2, true);
        observer->observe(0, 0, {3, 0, 1, 2, 4, 5, 6, 7}, FitnessValue::maximize(4), events);
        observer->observe(1, 0, {3, 0, 1, 2, 4, 5, 6, 7}, FitnessValue::maximize(4), events);
        CHECK(events.size() == 1);
        CHECK_FALSE(observer->finished());  // island 1 undecided
        observer->observe(1, 1, {3, 0, 1, 2, 4, 5, 6, 7}, FitnessValue::maximize(4), events);
        CHECK(events.size() == 2);
        CHECK(observer->finished());
    }
}

TEST_CASE("euler graph file round trip keeps the junction marker") {
    const auto path = std::filesystem::temp_directory_path() / "isle_euler_graph.txt";
    save_euler_graph(make_double_cycle(10), path);
    const EulerGraph loaded = load_euler_graph(path);
    CHECK(loaded.n() == 9);
    CHECK(loaded.m() == 10);
    REQUIRE(loaded.shared_vertex().has_value());
    CHECK(*loaded.shared_vertex() == 0);
    std::filesystem::remove(path);
}

TEST_CASE("multi-edges are legal") {
    const EulerGraph g(2, {{0, 1, -1}, {0, 1, -1}});
    CHECK(g.m() == 2);
    CHECK(walk_length(order_of({0, 1}), g).length == 2);
    CHECK(is_euler_optimal(order_of({0, 1}), g));
}
