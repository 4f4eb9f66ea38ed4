#include "isle/topology.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace isle {

const char* to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::ring: return "ring";
        case TopologyKind::torus: return "torus";
        case TopologyKind::complete: return "complete";
        case TopologyKind::custom: return "custom";
    }
    return "?";
}

Topology::Topology(std::uint32_t mu, std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs,
                   TopologyKind kind)
    : mu_(mu), kind_(kind) {
    if (mu == 0) {
        throw std::invalid_argument("topology: island count must be positive");
    }
    out_.resize(mu);
    in_.resize(mu);
    for (auto [src, dst] : arcs) {
        if (src >= mu || dst >= mu) {
            throw std::invalid_argument("topology: arc endpoint out of range");
        }
        if (src == dst) {
            throw std::invalid_argument("topology: self-loop arcs are not allowed");
        }
        out_[src].push_back(dst);
        in_[dst].push_back(src);
    }
    for (auto& v : out_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        arc_count_ += v.size();
    }
    for (auto& v : in_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

std::span<const std::uint32_t> Topology::out_neighbors(std::uint32_t island) const {
    return out_.at(island);
}

std::span<const std::uint32_t> Topology::in_neighbors(std::uint32_t island) const {
    return in_.at(island);
}

bool Topology::has_arc(std::uint32_t src, std::uint32_t dst) const {
    const auto& row = out_.at(src);
    return std::binary_search(row.begin(), row.end(), dst);
}

namespace {

// BFS distances over out-arcs; unreachable stays UINT32_MAX.
std::vector<std::uint32_t> bfs_distances(const Topology& t, std::uint32_t source) {
    std::vector<std::uint32_t> dist(t.mu(), UINT32_MAX);
    std::queue<std::uint32_t> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        const std::uint32_t u = queue.front();
        queue.pop();
        for (std::uint32_t v : t.out_neighbors(u)) {
            if (dist[v] == UINT32_MAX) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

}  // namespace

bool Topology::strongly_connected() const {
    for (std::uint32_t s = 0; s < mu_; ++s) {
        const auto dist = bfs_distances(*this, s);
        if (std::find(dist.begin(), dist.end(), UINT32_MAX) != dist.end()) {
            return false;
        }
    }
    return true;
}

std::uint32_t Topology::diameter() const {
    std::uint32_t best = 0;
    for (std::uint32_t s = 0; s < mu_; ++s) {
        const auto dist = bfs_distances(*this, s);
        for (std::uint32_t d : dist) {
            if (d == UINT32_MAX) {
                throw std::invalid_argument(
                    "diameter: topology is not strongly connected (infinite diameter)");
            }
            best = std::max(best, d);
        }
    }
    return best;
}

Topology make_ring(std::uint32_t mu) {
    if (mu == 0) {
        throw std::invalid_argument("make_ring: island count must be positive");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    if (mu >= 2) {
        for (std::uint32_t i = 0; i < mu; ++i) {
            arcs.emplace_back(i, (i + 1) % mu);
        }
    }
    return Topology(mu, std::move(arcs), TopologyKind::ring);
}

Topology make_torus(std::uint32_t a, std::uint32_t b) {
    if (a < 2 || b < 2) {
        throw std::invalid_argument("make_torus: side lengths must be at least 2");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    auto id = [b](std::uint32_t r, std::uint32_t c) { return r * b + c; };
    for (std::uint32_t r = 0; r < a; ++r) {
        for (std::uint32_t c = 0; c < b; ++c) {
            const std::uint32_t here = id(r, c);
            arcs.emplace_back(here, id((r + 1) % a, c));
            arcs.emplace_back(here, id((r + a - 1) % a, c));
            arcs.emplace_back(here, id(r, (c + 1) % b));
            arcs.emplace_back(here, id(r, (c + b - 1) % b));
        }
    }
    Topology t(a * b, std::move(arcs), TopologyKind::torus);
    t.sides_ = {a, b};
    return t;
}

Topology make_complete(std::uint32_t mu) {
    if (mu == 0) {
        throw std::invalid_argument("make_complete: island count must be positive");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    for (std::uint32_t i = 0; i < mu; ++i) {
        for (std::uint32_t j = 0; j < mu; ++j) {
            if (i != j) {
                arcs.emplace_back(i, j);
            }
        }
    }
    return Topology(mu, std::move(arcs), TopologyKind::complete);
}

Topology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open topology file: " + path.string());
    }
    std::string line;
    std::uint32_t mu = 0;
    bool have_mu = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!have_mu) {
            if (!(row >> mu)) {
                throw std::runtime_error("topology file: bad island count line");
            }
            have_mu = true;
            continue;
        }
        std::uint32_t src = 0, dst = 0;
        if (!(row >> src >> dst)) {
            throw std::runtime_error("topology file: bad arc line: " + line);
        }
        arcs.emplace_back(src, dst);
    }
    if (!have_mu) {
        throw std::runtime_error("topology file: missing island count");
    }
    return Topology(mu, std::move(arcs), TopologyKind::custom);
}

void save_topology(const Topology& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write topology file: " + path.string());
    }
    out << t.mu() << "\n";
    for (std::uint32_t u = 0; u < t.mu(); ++u) {
        for (std::uint32_t v : t.out_neighbors(u)) {
            out << u << " " << v << "\n";
        }
    }
}

}  // namespace isle
