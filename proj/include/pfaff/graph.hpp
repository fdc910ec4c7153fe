#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfaff/gf2.hpp"

namespace pfaff {

using VertexPair = std::pair<int, int>;

// Finite simple undirected graph.  Vertices are 0..n-1; edges are stored with
// u < v and sorted lexicographically, and the position in that order is the
// edge index used by every bit vector in the library.  Immutable after
// construction.
class Graph {
  public:
    Graph() = default;

    Graph(int n, std::vector<VertexPair> edge_pairs) : n_(n) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        for (auto& [u, v] : edge_pairs) {
            if (u == v) throw std::invalid_argument("Graph: loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n) throw std::invalid_argument("Graph: endpoint out of range");
        }
        std::sort(edge_pairs.begin(), edge_pairs.end());
        for (std::size_t i = 1; i < edge_pairs.size(); ++i)
            if (edge_pairs[i] == edge_pairs[i - 1])
                throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(edge_pairs[i].first) + "," +
                                            std::to_string(edge_pairs[i].second) + ")");
        edges_ = std::move(edge_pairs);
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            auto [u, v] = edges_[e];
            adj_[u].push_back({v, static_cast<int>(e)});
            adj_[v].push_back({u, static_cast<int>(e)});
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<VertexPair>& edges() const { return edges_; }
    VertexPair edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

    // Neighbors of v as (neighbor, edge index), neighbor ascending.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    std::optional<int> edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), VertexPair{u, v});
        if (it != edges_.end() && *it == VertexPair{u, v}) return static_cast<int>(it - edges_.begin());
        return std::nullopt;
    }

    bool has_edge(int u, int v) const { return edge_index(u, v).has_value(); }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

  private:
    int n_ = 0;
    std::vector<VertexPair> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// One direction bit per edge index: 0 orients the edge from its lower-indexed
// endpoint to the higher, 1 the reverse.
struct Orientation {
    BitVec bits;

    Orientation() = default;
    explicit Orientation(std::size_t edge_count) : bits(edge_count) {}

    static Orientation all_forward(const Graph& g) { return Orientation(static_cast<std::size_t>(g.edge_count())); }

    bool forward(int e) const { return !bits.get(static_cast<std::size_t>(e)); }

    // (tail, head) of edge e under this orientation.
    VertexPair directed(const Graph& g, int e) const {
        auto [u, v] = g.edge(e);
        return forward(e) ? VertexPair{u, v} : VertexPair{v, u};
    }

    Orientation flipped(const BitVec& flips) const {
        Orientation out = *this;
        out.bits ^= flips;
        return out;
    }

    bool operator==(const Orientation&) const = default;
};

// ---------------------------------------------------------------------------
// graph6 encoding (standard format, n <= 62)

class graph6_error : public std::runtime_error {
  public:
    graph6_error(const std::string& msg, std::size_t offset)
        : std::runtime_error("graph6: " + msg + " at byte " + std::to_string(offset)), byte_offset(offset) {}
    std::size_t byte_offset;
};

inline Graph parse_graph6(std::string_view text) {
    if (text.empty()) throw graph6_error("empty input", 0);
    const unsigned char head = static_cast<unsigned char>(text[0]);
    if (head == 126) throw graph6_error("multi-byte order (n > 62) not supported", 0);
    if (head < 63 || head > 125) throw graph6_error("malformed header character", 0);
    const int n = head - 63;
    const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (text.size() < 1 + nbytes) throw graph6_error("truncated body", text.size());
    if (text.size() > 1 + nbytes) throw graph6_error("trailing garbage", 1 + nbytes);

    std::vector<bool> bits;
    bits.reserve(nbytes * 6);
    for (std::size_t i = 0; i < nbytes; ++i) {
        const unsigned char c = static_cast<unsigned char>(text[1 + i]);
        if (c < 63 || c > 126) throw graph6_error("out-of-range body character", 1 + i);
        const unsigned val = c - 63;
        for (int k = 5; k >= 0; --k) bits.push_back((val >> k) & 1u);
    }
    for (std::size_t k = nbits; k < bits.size(); ++k)
        if (bits[k]) throw graph6_error("nonzero padding bits", 1 + k / 6);

    std::vector<VertexPair> edges;
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if (bits[k]) edges.push_back({i, j});
    return Graph(n, std::move(edges));
}

inline std::string to_graph6(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 62) throw std::invalid_argument("to_graph6: only n <= 62 supported");
    std::string out;
    out.push_back(static_cast<char>(n + 63));
    const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<bool> bits(((nbits + 5) / 6) * 6, false);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if (g.has_edge(i, j)) bits[k] = true;
    for (std::size_t i = 0; i < bits.size(); i += 6) {
        unsigned val = 0;
        for (int b = 0; b < 6; ++b) val = (val << 1) | (bits[i + b] ? 1u : 0u);
        out.push_back(static_cast<char>(val + 63));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Plain edge-list text: optional first line "n <count>", then one "u v" per line.

inline Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<int> declared_n;
    std::vector<VertexPair> edges;
    int max_label = -1;
    std::size_t line_no = 0;
    bool first_content = true;

    auto parse_int = [&](const std::string& tok) {
        std::size_t pos = 0;
        int val = 0;
        try {
            val = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": non-integer token '" + tok + "'");
        }
        if (pos != tok.size())
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": non-integer token '" + tok + "'");
        if (val < 0) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": negative label");
        return val;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;  // blank line
        if (first_content && a == "n") {
            if (!(ls >> b)) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": missing vertex count");
            declared_n = parse_int(b);
            first_content = false;
            if (ls >> extra) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": trailing token");
            continue;
        }
        first_content = false;
        if (!(ls >> b)) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": missing second endpoint");
        if (ls >> extra) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": trailing token");
        int u = parse_int(a), v = parse_int(b);
        if (u == v) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": loop at " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (std::find(edges.begin(), edges.end(), VertexPair{u, v}) != edges.end())
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": duplicate edge " + std::to_string(u) +
                                        " " + std::to_string(v));
        edges.push_back({u, v});
        max_label = std::max(max_label, v);
    }
    int n = declared_n.value_or(max_label + 1);
    if (declared_n && max_label >= *declared_n)
        throw std::invalid_argument("edge list: label " + std::to_string(max_label) + " exceeds declared n");
    return Graph(n, std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// DOT export

inline std::string to_dot(const Graph& g, const std::vector<std::string>* labels = nullptr) {
    std::ostringstream out;
    out << "graph G {\n";
    if (labels)
        for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << " [label=\"" << (*labels)[v] << "\"];\n";
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Graph& g, const Orientation& d, const std::vector<std::string>* labels = nullptr) {
    std::ostringstream out;
    out << "digraph G {\n";
    if (labels)
        for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << " [label=\"" << (*labels)[v] << "\"];\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [tail, head] = d.directed(g, e);
        out << "  " << tail << " -> " << head << ";\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Structural transformations

// Maps each edge of a derived graph back to the edge of the source graph it
// came from; total on the derived edge set.
struct EdgeProvenance {
    std::vector<int> source_edge;
};

struct SubdivisionResult {
    Graph graph;
    EdgeProvenance provenance;
};

// Replaces each planned edge (u,v) by a path from u to v with exactly 2k new
// internal vertices; unplanned edges are copied.  Plan keys may be given in
// either endpoint order.
inline SubdivisionResult even_subdivide(const Graph& g, const std::map<VertexPair, int>& plan) {
    std::map<int, int> plan_by_index;
    for (auto [pair, k] : plan) {
        auto idx = g.edge_index(pair.first, pair.second);
        if (!idx)
            throw std::invalid_argument("even_subdivide: plan key (" + std::to_string(pair.first) + "," +
                                        std::to_string(pair.second) + ") is not an edge");
        if (k < 1) throw std::invalid_argument("even_subdivide: subdivision count must be >= 1");
        plan_by_index[*idx] = k;
    }

    int next_vertex = g.vertex_count();
    std::vector<std::pair<VertexPair, int>> tagged;  // (edge pair, source index)
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        auto it = plan_by_index.find(e);
        if (it == plan_by_index.end()) {
            tagged.push_back({{u, v}, e});
            continue;
        }
        int prev = u;
        for (int i = 0; i < 2 * it->second; ++i) {
            int w = next_vertex++;
            tagged.push_back({{std::min(prev, w), std::max(prev, w)}, e});
            prev = w;
        }
        tagged.push_back({{std::min(prev, v), std::max(prev, v)}, e});
    }
    std::sort(tagged.begin(), tagged.end());
    std::vector<VertexPair> pairs;
    EdgeProvenance prov;
    for (auto& [pair, src] : tagged) {
        pairs.push_back(pair);
        prov.source_edge.push_back(src);
    }
    return {Graph(next_vertex, std::move(pairs)), std::move(prov)};
}

struct ContractionResult {
    Graph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    bool parallels_merged = false;
    int loops_removed = 0;
};

namespace detail {
inline bool is_simple_cycle_of(const Graph& g, const std::vector<int>& cycle) {
    if (cycle.size() < 3) return false;
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v : cycle) {
        if (v < 0 || v >= g.vertex_count() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}
}  // namespace detail

// Contracts an odd simple cycle to a single new vertex (placed at the highest
// new index); loops are dropped and parallel edges merged, and both events are
// reported so callers can tell when simplification happened.
inline ContractionResult contract_odd_cycle(const Graph& g, const std::vector<int>& cycle) {
    if (!detail::is_simple_cycle_of(g, cycle)) throw std::invalid_argument("contract_odd_cycle: sequence is not a cycle of g");
    if (cycle.size() % 2 == 0) throw std::invalid_argument("contract_odd_cycle: cycle has even length");

    const int n = g.vertex_count();
    const int merged = n - static_cast<int>(cycle.size());
    std::vector<bool> on_cycle(static_cast<std::size_t>(n), false);
    for (int v : cycle) on_cycle[static_cast<std::size_t>(v)] = true;

    ContractionResult result;
    result.vertex_map.assign(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) result.vertex_map[static_cast<std::size_t>(v)] = on_cycle[static_cast<std::size_t>(v)] ? merged : next++;

    std::vector<VertexPair> pairs;
    for (auto [u, v] : g.edges()) {
        int a = result.vertex_map[static_cast<std::size_t>(u)];
        int b = result.vertex_map[static_cast<std::size_t>(v)];
        if (a == b) {
            ++result.loops_removed;
            continue;
        }
        if (a > b) std::swap(a, b);
        pairs.push_back({a, b});
    }
    std::sort(pairs.begin(), pairs.end());
    auto last = std::unique(pairs.begin(), pairs.end());
    result.parallels_merged = last != pairs.end();
    pairs.erase(last, pairs.end());
    result.graph = Graph(merged + 1, std::move(pairs));
    return result;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> kept;        // new vertex -> old vertex
    std::vector<int> old_to_new;  // old vertex -> new vertex, -1 if deleted
};

inline InducedSubgraph delete_vertices(const Graph& g, const std::vector<int>& to_delete) {
    std::vector<bool> gone(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v : to_delete) {
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("delete_vertices: vertex out of range");
        gone[static_cast<std::size_t>(v)] = true;
    }
    InducedSubgraph out;
    out.old_to_new.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!gone[static_cast<std::size_t>(v)]) {
            out.old_to_new[static_cast<std::size_t>(v)] = static_cast<int>(out.kept.size());
            out.kept.push_back(v);
        }
    }
    std::vector<VertexPair> pairs;
    for (auto [u, v] : g.edges()) {
        int a = out.old_to_new[static_cast<std::size_t>(u)];
        int b = out.old_to_new[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) pairs.push_back({a, b});
    }
    out.graph = Graph(static_cast<int>(out.kept.size()), std::move(pairs));
    return out;
}

// Deletes edges by index, keeping the vertex set.
inline Graph delete_edges(const Graph& g, const std::vector<int>& edge_indices) {
    std::vector<bool> gone(static_cast<std::size_t>(g.edge_count()), false);
    for (int e : edge_indices) {
        if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("delete_edges: edge index out of range");
        gone[static_cast<std::size_t>(e)] = true;
    }
    std::vector<VertexPair> pairs;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!gone[static_cast<std::size_t>(e)]) pairs.push_back(g.edge(e));
    return Graph(g.vertex_count(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Elementary predicates

inline bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int visited = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : g.neighbors(v)) {
            (void)e;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++visited;
                q.push(w);
            }
        }
    }
    return visited == n;
}

// Two-coloring if bipartite, std::nullopt otherwise.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (color[static_cast<std::size_t>(s)] != -1) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, e] : g.neighbors(v)) {
                (void)e;
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    q.push(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

inline bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

}  // namespace pfaff
