#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace isle {

enum class TopologyKind { ring, torus, complete, custom };

const char* to_string(TopologyKind kind);

// Directed communication graph over islands. No self-loops (an island always
// keeps its resident unless an immigrant is strictly better, so a self-arc
// would be redundant). Immutable after construction; safe to share across
// threads.
class Topology {
public:
    // mu islands, arbitrary arcs. Duplicates are dropped, self-loops rejected.
    // Custom topologies need not be strongly connected; the engine runs them,
    // bound evaluation refuses them.
    Topology(std::uint32_t mu, std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs,
             TopologyKind kind = TopologyKind::custom);

    std::uint32_t mu() const { return mu_; }
    TopologyKind kind() const { return kind_; }
    std::size_t arc_count() const { return arc_count_; }
    std::optional<std::pair<std::uint32_t, std::uint32_t>> torus_sides() const { return sides_; }

    std::span<const std::uint32_t> out_neighbors(std::uint32_t island) const;
    std::span<const std::uint32_t> in_neighbors(std::uint32_t island) const;
    bool has_arc(std::uint32_t src, std::uint32_t dst) const;

    bool strongly_connected() const;

    // Maximum over ordered pairs of shortest directed path lengths.
    // Throws if the topology is not strongly connected (infinite diameter).
    std::uint32_t diameter() const;

private:
    friend Topology make_torus(std::uint32_t a, std::uint32_t b);

    std::uint32_t mu_ = 0;
    TopologyKind kind_ = TopologyKind::custom;
    std::size_t arc_count_ = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> sides_;
    std::vector<std::vector<std::uint32_t>> out_;  // sorted
    std::vector<std::vector<std::uint32_t>> in_;   // sorted
};

// Unidirectional ring: arcs (i, (i+1) mod mu); empty arc set for mu = 1.
Topology make_ring(std::uint32_t mu);

// Undirected a x b torus (arcs in both directions); sides must be >= 2.
// Wraparound arcs that coincide with grid arcs (side 2) are deduplicated.
Topology make_torus(std::uint32_t a, std::uint32_t b);

// All ordered pairs (i, j), i != j.
Topology make_complete(std::uint32_t mu);

// Text format: first line `mu`, then one `src dst` pair per line, zero-indexed.
Topology load_topology(const std::filesystem::path& path);
void save_topology(const Topology& t, const std::filesystem::path& path);

}  // namespace isle
