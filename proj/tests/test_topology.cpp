#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "isle/topology.hpp"

using namespace isle;

namespace {

// Independent diameter oracle: Floyd-Warshall over the arc set.
std::uint32_t floyd_warshall_diameter(const Topology& t) {
    const std::uint32_t n = t.mu();
    const std::uint32_t inf = UINT32_MAX / 2;
    std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, inf));
    for (std::uint32_t i = 0; i < n; ++i) {
        dist[i][i] = 0;
        for (std::uint32_t j : t.out_neighbors(i)) {
            dist[i][j] = 1;
        }
    }
    for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
            }
        }
    }
    std::uint32_t best = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            REQUIRE(dist[i][j] < inf);
            best = std::max(best, dist[i][j]);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("ring construction") {
    const Topology one = make_ring(1);
    CHECK(one.arc_count() == 0);
    CHECK(one.diameter() == 0);

    const Topology three = make_ring(3);
    CHECK(three.arc_count() == 3);
    CHECK(three.has_arc(0, 1));
    CHECK(three.has_arc(1, 2));
    CHECK(three.has_arc(2, 0));
    CHECK_FALSE(three.has_arc(1, 0));
    CHECK(three.diameter() == 2);
    CHECK(three.diameter() == floyd_warshall_diameter(three));

    CHECK(make_ring(8).diameter() == 7);
    CHECK_THROWS(make_ring(0));
}

TEST_CASE("torus construction") {
    const Topology small = make_torus(2, 2);
    CHECK(small.mu() == 4);
    for (std::uint32_t v = 0; v < 4; ++v) {
        CHECK(small.out_neighbors(v).size() == 2);  // wraparound arcs coincide
    }
    CHECK(small.diameter() == 2);
    CHECK(small.diameter() == floyd_warshall_diameter(small));

    const Topology nine = make_torus(3, 3);
    for (std::uint32_t v = 0; v < 9; ++v) {
        CHECK(nine.out_neighbors(v).size() == 4);
    }
    CHECK(nine.diameter() == 2);

    const Topology sixteen = make_torus(4, 4);
    CHECK(sixteen.diameter() == 4);
    CHECK(sixteen.diameter() == floyd_warshall_diameter(sixteen));

    CHECK_THROWS(make_torus(1, 4));
    CHECK_THROWS(make_torus(4, 1));
}

TEST_CASE("torus arcs are symmetric") {
    for (auto [a, b] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 5u}, {4u, 4u}}) {
        const Topology t = make_torus(a, b);
        for (std::uint32_t u = 0; u < t.mu(); ++u) {
            for (std::uint32_t v : t.out_neighbors(u)) {
                CHECK(t.has_arc(v, u));
            }
        }
    }
}

TEST_CASE("complete construction") {
    const Topology five = make_complete(5);
    CHECK(five.arc_count() == 20);
    CHECK(five.diameter() == 1);
    const Topology two = make_complete(2);
    CHECK(two.has_arc(0, 1));
    CHECK(two.has_arc(1, 0));
    CHECK(make_complete(1).arc_count() == 0);
    CHECK(make_complete(8).diameter() == 1);
    CHECK_THROWS(make_complete(0));
}

TEST_CASE("strong connectivity") {
    CHECK(make_ring(4).strongly_connected());
    CHECK(make_complete(3).strongly_connected());
    const Topology partial(2, {{0, 1}});
    CHECK_FALSE(partial.strongly_connected());
    CHECK_THROWS(partial.diameter());
}

TEST_CASE("constructed kinds are strongly connected with matching diameters") {
    for (std::uint32_t mu : {2u, 3u, 5u, 8u}) {
        CHECK(make_ring(mu).strongly_connected());
        CHECK(make_ring(mu).diameter() == mu - 1);
        CHECK(make_complete(mu).strongly_connected());
        CHECK(make_complete(mu).diameter() == 1);
    }
    for (auto [a, b] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}}) {
        const Topology t = make_torus(a, b);
        CHECK(t.strongly_connected());
        CHECK(t.diameter() == floyd_warshall_diameter(t));
    }
}

TEST_CASE("self-loops are rejected, duplicates are dropped") {
    CHECK_THROWS(Topology(3, {{1, 1}}));
    const Topology t(3, {{0, 1}, {0, 1}, {1, 0}});
    CHECK(t.arc_count() == 2);
}

TEST_CASE("custom topology file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "isle_topology_test.txt";
    {
        std::ofstream out(path);
        out << "3\n0 1\n1 2\n2 0\n";
    }
    const Topology t = load_topology(path);
    CHECK(t.mu() == 3);
    CHECK(t.has_arc(0, 1));
    CHECK(t.strongly_connected());

    const auto out_path = std::filesystem::temp_directory_path() / "isle_topology_test2.txt";
    save_topology(t, out_path);
    const Topology back = load_topology(out_path);
    CHECK(back.mu() == t.mu());
    for (std::uint32_t u = 0; u < 3; ++u) {
        for (std::uint32_t v : t.out_neighbors(u)) {
            CHECK(back.has_arc(u, v));
        }
    }
    std::filesystem::remove(path);
    std::filesystem::remove(out_path);
}
