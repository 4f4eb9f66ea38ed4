#include "isle/shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace isle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightedGraph::WeightedGraph(std::uint32_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n < 2) {
        throw std::invalid_argument("WeightedGraph: need at least 2 vertices");
    }
    adjacency_.resize(n);
    for (const auto& e : edges_) {
        if (e.u >= n || e.v >= n) {
            throw std::invalid_argument("WeightedGraph: edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw std::invalid_argument("WeightedGraph: self-loops are not allowed");
        }
        if (!(e.weight >= 0.0) || std::isinf(e.weight)) {
            throw std::invalid_argument("WeightedGraph: weights must be finite and >= 0");
        }
        adjacency_[e.u].emplace_back(e.v, e.weight);
        adjacency_[e.v].emplace_back(e.u, e.weight);
    }
    for (auto& row : adjacency_) {
        std::sort(row.begin(), row.end());
    }
    // Connectivity from the source.
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack{source()};
    seen[source()] = true;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (auto [v, w] : adjacency_[u]) {
            (void)w;
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("WeightedGraph: graph must be connected");
    }
}

const std::vector<std::pair<std::uint32_t, double>>& WeightedGraph::neighbors(
    std::uint32_t v) const {
    return adjacency_.at(v);
}

double WeightedGraph::weight(std::uint32_t u, std::uint32_t v) const {
    const auto& row = adjacency_.at(u);
    auto it = std::lower_bound(row.begin(), row.end(),
                               std::make_pair(v, -std::numeric_limits<double>::infinity()));
    if (it != row.end() && it->first == v) {
        return it->second;
    }
    return kInf;
}

WeightedGraph load_weighted_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path.string());
    }
    std::string line;
    std::uint32_t n = 0;
    std::size_t m = 0;
    bool have_header = false;
    std::vector<WeightedGraph::Edge> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream row(line);
        if (!have_header) {
            if (!(row >> n >> m)) {
                throw std::runtime_error("graph file: bad header line");
            }
            have_header = true;
            continue;
        }
        std::uint32_t u = 0, v = 0;
        double w = 0.0;
        if (!(row >> u >> v >> w)) {
            throw std::runtime_error("graph file: bad edge line: " + line);
        }
        if (u == 0 || v == 0 || u > n || v > n) {
            throw std::runtime_error("graph file: vertex out of range (1-indexed): " + line);
        }
        edges.push_back({u - 1, v - 1, w});
    }
    if (!have_header || edges.size() != m) {
        throw std::runtime_error("graph file: edge count does not match header");
    }
    return WeightedGraph(n, std::move(edges));
}

void save_weighted_graph(const WeightedGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write graph file: " + path.string());
    }
    out << g.n() << " " << g.edge_count() << "\n";
    for (const auto& e : g.edges()) {
        out << e.u + 1 << " " << e.v + 1 << " " << e.weight << "\n";
    }
}

bool is_valid_predecessor_vector(const PredecessorVector& x, std::uint32_t n) {
    if (x.size() != n - 1) {
        return false;
    }
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        if (x[i] < 0 || static_cast<std::uint32_t>(x[i]) >= n ||
            static_cast<std::uint32_t>(x[i]) == i) {
            return false;
        }
    }
    return true;
}

DistanceVector eval_distances(const PredecessorVector& x, const WeightedGraph& g) {
    const std::uint32_t n = g.n();
    const std::uint32_t s = g.source();
    // 0 = unresolved, 1 = on current chain, 2 = resolved
    std::vector<std::uint8_t> state(n, 0);
    std::vector<double> dist(n, kInf);
    state[s] = 2;
    dist[s] = 0.0;

    std::vector<std::uint32_t> chain;
    for (std::uint32_t start = 0; start + 1 < n; ++start) {
        if (state[start] == 2) {
            continue;
        }
        chain.clear();
        std::uint32_t v = start;
        double base = kInf;
        bool broken = false;
        for (;;) {
            if (state[v] == 2) {  // known distance (source included)
                base = dist[v];
                break;
            }
            if (state[v] == 1) {  // chain re-entered itself
                broken = true;
                break;
            }
            state[v] = 1;
            chain.push_back(v);
            const std::uint32_t p = static_cast<std::uint32_t>(x[v]);
            if (std::isinf(g.weight(v, p))) {  // predecessor is not a neighbor
                broken = true;
                break;
            }
            v = p;
        }
        if (broken || std::isinf(base)) {
            for (std::uint32_t u : chain) {
                state[u] = 2;
                dist[u] = kInf;
            }
            continue;
        }
        // Accumulate source-outward so equal paths round identically.
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            base += g.weight(*it, static_cast<std::uint32_t>(x[*it]));
            state[*it] = 2;
            dist[*it] = base;
        }
    }
    dist.resize(n - 1);
    return DistanceVector{std::move(dist)};
}

bool dominates_weakly(const DistanceVector& a, const DistanceVector& b) {
    return weakly_dominates(a.values, b.values);
}

bool accept_sssp(const DistanceVector& current, const DistanceVector& candidate) {
    return dominates_weakly(candidate, current);
}

PredecessorVector elementary_vertex_mutation(const PredecessorVector& x, std::uint32_t n,
                                             Rng& rng) {
    if (n < 3) {
        throw std::invalid_argument("elementary_vertex_mutation: n must be >= 3");
    }
    PredecessorVector y = x;
    const std::uint32_t i = static_cast<std::uint32_t>(rng.below(n - 1));
    const std::uint32_t old = static_cast<std::uint32_t>(y[i]);
    const std::uint32_t lo = std::min(i, old);
    const std::uint32_t hi = std::max(i, old);
    std::uint32_t pick = static_cast<std::uint32_t>(rng.below(n - 2));
    if (pick >= lo) {
        ++pick;
    }
    if (pick >= hi) {
        ++pick;
    }
    y[i] = static_cast<std::int32_t>(pick);
    return y;
}

PredecessorVector elementary_edge_mutation(const PredecessorVector& x, const WeightedGraph& g,
                                           Rng& rng) {
    PredecessorVector y = x;
    const std::uint64_t arcs = 2 * g.edge_count();
    for (;;) {
        const std::uint64_t draw = rng.below(arcs);
        const auto& e = g.edges()[draw / 2];
        const std::uint32_t tail = (draw % 2 == 0) ? e.u : e.v;
        const std::uint32_t head = (draw % 2 == 0) ? e.v : e.u;
        if (head == g.source()) {  // the source has no predecessor; redraw
            continue;
        }
        y[head] = static_cast<std::int32_t>(tail);
        return y;
    }
}

PredecessorVector mutate_vertex_based(const PredecessorVector& x, std::uint32_t n, Rng& rng) {
    const unsigned ops = poisson1_sample(rng) + 1;
    PredecessorVector y = x;
    for (unsigned k = 0; k < ops; ++k) {
        y = elementary_vertex_mutation(y, n, rng);
    }
    return y;
}

PredecessorVector mutate_edge_based(const PredecessorVector& x, const WeightedGraph& g,
                                    Rng& rng) {
    const unsigned ops = poisson1_sample(rng) + 1;
    PredecessorVector y = x;
    for (unsigned k = 0; k < ops; ++k) {
        y = elementary_edge_mutation(y, g, rng);
    }
    return y;
}

DistanceVector shortest_path_oracle(const WeightedGraph& g) {
    const std::uint32_t n = g.n();
    std::vector<double> dist(n, kInf);
    std::vector<bool> settled(n, false);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[g.source()] = 0.0;
    heap.push({0.0, g.source()});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) {
            continue;
        }
        settled[u] = true;
        for (auto [v, w] : g.neighbors(u)) {
            if (!settled[v] && d + w < dist[v]) {
                dist[v] = d + w;
                heap.push({dist[v], v});
            }
        }
    }
    dist.resize(n - 1);
    return DistanceVector{std::move(dist)};
}

bool is_optimal_sssp(const PredecessorVector& x, const WeightedGraph& g) {
    return eval_distances(x, g).values == shortest_path_oracle(g).values;
}

SsspInstance gen_path_graph(std::uint32_t n, double weight) {
    if (n < 3) {
        throw std::invalid_argument("gen_path_graph: n must be >= 3");
    }
    std::vector<WeightedGraph::Edge> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1, weight});
    }
    LayerProfile profile;
    profile.depth = n - 1;
    profile.layer_sizes.assign(n - 1, 1);
    return {WeightedGraph(n, std::move(edges)), std::move(profile)};
}

SsspInstance gen_layered_instance(std::uint32_t n, std::uint32_t ell) {
    if (n < 3) {
        throw std::invalid_argument("gen_layered_instance: n must be >= 3");
    }
    if (ell < 1 || ell > n - 1 || (n - 1) % ell != 0) {
        throw std::invalid_argument("gen_layered_instance: ell must divide n-1");
    }
    const std::uint32_t per_layer = (n - 1) / ell;
    // Layer j (1-based) holds vertices [(j-1)*per_layer, j*per_layer);
    // layer 0 is the source, vertex n-1.
    std::vector<WeightedGraph::Edge> edges;
    for (std::uint32_t j = 1; j <= ell; ++j) {
        for (std::uint32_t a = 0; a < per_layer; ++a) {
            const std::uint32_t v = (j - 1) * per_layer + a;
            if (j == 1) {
                edges.push_back({v, n - 1, 1.0});
            } else {
                for (std::uint32_t b = 0; b < per_layer; ++b) {
                    edges.push_back({v, (j - 2) * per_layer + b, 1.0});
                }
            }
        }
    }
    LayerProfile profile;
    profile.depth = ell;
    profile.layer_sizes.assign(ell, per_layer);
    return {WeightedGraph(n, std::move(edges)), std::move(profile)};
}

const char* to_string(SsspOperator op) {
    return op == SsspOperator::vertex ? "vertex" : "edge";
}

SsspOperator sssp_operator_from_string(const std::string& name) {
    if (name == "vertex") return SsspOperator::vertex;
    if (name == "edge") return SsspOperator::edge;
    throw std::invalid_argument("unknown sssp operator: " + name);
}

SsspProblem::SsspProblem(WeightedGraph graph, SsspOperator op)
    : graph_(std::move(graph)), op_(op), oracle_(shortest_path_oracle(graph_)) {
    if (graph_.n() < 3) {
        throw std::invalid_argument("SsspProblem: n must be >= 3");
    }
}

Genotype SsspProblem::sample_initial(Rng& rng) const {
    const std::uint32_t n = graph_.n();
    Genotype x(n - 1);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        if (op_ == SsspOperator::vertex) {
            std::uint32_t pick = static_cast<std::uint32_t>(rng.below(n - 1));
            if (pick >= i) {
                ++pick;
            }
            x[i] = static_cast<std::int32_t>(pick);
        } else {
            const auto& row = graph_.neighbors(i);
            x[i] = static_cast<std::int32_t>(row[rng.below(row.size())].first);
        }
    }
    return x;
}

Genotype SsspProblem::mutate(const Genotype& g, Rng& rng) const {
    return op_ == SsspOperator::vertex ? mutate_vertex_based(g, graph_.n(), rng)
                                       : mutate_edge_based(g, graph_, rng);
}

FitnessValue SsspProblem::fitness(const Genotype& g) const {
    return FitnessValue::distance_vector(eval_distances(g, graph_).values);
}

bool SsspProblem::is_optimal_value(const FitnessValue& f) const {
    return f.components == oracle_.values;
}

}  // namespace isle
