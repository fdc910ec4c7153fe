#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfaff/cycles.hpp"
#include "pfaff/graph.hpp"
#include "pfaff/matching.hpp"

namespace pfaff {

// A named graph together with its distinguished 1-factors, a reference
// orientation where one is known, and named cycle families.  Vertex labels
// are normalized to 0-based integers; `labels` keeps the original letters or
// numbers for display.
struct CatalogEntry {
    std::string name;
    Graph graph;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, OneFactor>> factors;
    std::optional<Orientation> reference_orientation;
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> cycle_families;
    std::optional<VertexPair> edge_e, edge_f;  // the distinguished independent edge pair, when one is named

    const OneFactor& factor(std::string_view fname) const {
        for (const auto& [n, f] : factors)
            if (n == fname) return f;
        throw std::invalid_argument("catalog entry '" + name + "' has no factor named '" + std::string(fname) + "'");
    }

    const std::vector<std::vector<int>>& cycle_family(std::string_view fam) const {
        for (const auto& [n, c] : cycle_families)
            if (n == fam) return c;
        throw std::invalid_argument("catalog entry '" + name + "' has no cycle family named '" + std::string(fam) + "'");
    }
};

namespace detail {

inline Orientation orientation_from_arcs(const Graph& g, const std::vector<VertexPair>& arcs) {
    Orientation d = Orientation::all_forward(g);
    for (auto [tail, head] : arcs) {
        auto e = g.edge_index(tail, head);
        if (!e) throw std::logic_error("catalog: arc is not an edge");
        if (tail > head) d.bits.set(static_cast<std::size_t>(*e));
    }
    return d;
}

inline void validate_catalog_entry(const CatalogEntry& entry) {
    for (const auto& [fname, fam] : entry.cycle_families) {
        (void)fname;
        for (const auto& cyc : fam)
            if (!is_simple_cycle_of(entry.graph, cyc)) throw std::logic_error("catalog: family member is not a cycle");
    }
}

inline CatalogEntry make_wagner() {
    // Rim cycle on eight vertices plus the four long chords.
    std::vector<VertexPair> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8});
    for (int i = 0; i < 4; ++i) edges.push_back({i, i + 4});
    CatalogEntry e;
    e.name = "wagner";
    e.graph = Graph(8, std::move(edges));
    for (int i = 0; i < 8; ++i) e.labels.push_back(std::to_string(i + 1));
    e.factors.push_back({"F1", OneFactor::from_pairs(e.graph, {{0, 4}, {1, 5}, {2, 6}, {3, 7}})});
    e.factors.push_back({"F2", OneFactor::from_pairs(e.graph, {{0, 1}, {2, 3}, {4, 5}, {6, 7}})});
    e.edge_e = VertexPair{0, 7};
    e.edge_f = VertexPair{3, 4};
    e.cycle_families.push_back(
        {"F2_skew_pair", {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 5, 4, 3, 2, 6, 7}}});
    validate_catalog_entry(e);
    return e;
}

inline CatalogEntry make_cubeplex() {
    // Twelve-cycle a..l plus the chords a-d, b-g, c-i, e-j, f-l, h-k.
    std::vector<VertexPair> edges;
    for (int i = 0; i < 12; ++i) edges.push_back({i, (i + 1) % 12});
    for (VertexPair chord : {VertexPair{0, 3}, {1, 6}, {2, 8}, {4, 9}, {5, 11}, {7, 10}}) edges.push_back(chord);
    CatalogEntry e;
    e.name = "cubeplex";
    e.graph = Graph(12, std::move(edges));
    for (int i = 0; i < 12; ++i) e.labels.push_back(std::string(1, static_cast<char>('a' + i)));
    e.factors.push_back(
        {"F1", OneFactor::from_pairs(e.graph, {{0, 3}, {1, 6}, {2, 8}, {4, 9}, {7, 10}, {5, 11}})});
    // Arrow directions transcribed from the drawing.
    e.reference_orientation = orientation_from_arcs(
        e.graph, {{0, 1}, {2, 1}, {2, 3}, {3, 4}, {5, 4}, {5, 6}, {6, 7}, {7, 8}, {9, 8}, {9, 10}, {11, 10}, {0, 11},
                  {3, 0}, {1, 6}, {4, 9}, {11, 5}, {10, 7}, {8, 2}});
    e.cycle_families.push_back({"A",
                                {{0, 3, 2, 8, 9, 4, 5, 11, 10, 7, 6, 1},
                                 {0, 3, 4, 9, 10, 7, 8, 2, 1, 6, 5, 11},
                                 {1, 6, 5, 11, 10, 7, 8, 2},
                                 {0, 3, 2, 8, 9, 4, 5, 11},
                                 {0, 3, 4, 9, 10, 7, 6, 1}}});
    validate_catalog_entry(e);
    return e;
}

inline CatalogEntry make_twinplex() {
    // Twelve-cycle a..l plus the chords a-i, b-f, c-j, d-h, e-l, g-k.
    std::vector<VertexPair> edges;
    for (int i = 0; i < 12; ++i) edges.push_back({i, (i + 1) % 12});
    for (VertexPair chord : {VertexPair{0, 8}, {1, 5}, {2, 9}, {3, 7}, {4, 11}, {6, 10}}) edges.push_back(chord);
    CatalogEntry e;
    e.name = "twinplex";
    e.graph = Graph(12, std::move(edges));
    for (int i = 0; i < 12; ++i) e.labels.push_back(std::string(1, static_cast<char>('a' + i)));
    e.factors.push_back(
        {"F2", OneFactor::from_pairs(e.graph, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}})});
    e.reference_orientation = orientation_from_arcs(
        e.graph, {{0, 1}, {1, 2}, {3, 2}, {4, 3}, {5, 4}, {6, 5}, {6, 7}, {7, 8}, {9, 8}, {10, 9}, {11, 10}, {0, 11},
                  {8, 0}, {1, 5}, {2, 9}, {7, 3}, {4, 11}, {10, 6}});
    e.cycle_families.push_back({"A",
                                {{0, 1, 5, 4, 11, 10, 6, 7, 3, 2, 9, 8},
                                 {7, 6, 5, 4, 11, 10, 9, 8},
                                 {0, 1, 5, 4, 3, 2, 9, 8},
                                 {0, 1, 2, 3, 7, 6, 10, 11},
                                 {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}});
    validate_catalog_entry(e);
    return e;
}

inline CatalogEntry make_k33() {
    std::vector<VertexPair> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) edges.push_back({i, j});
    CatalogEntry e;
    e.name = "k33";
    e.graph = Graph(6, std::move(edges));
    for (int i = 0; i < 6; ++i) e.labels.push_back(std::to_string(i + 1));
    e.factors.push_back({"F3", OneFactor::from_pairs(e.graph, {{0, 3}, {1, 4}, {2, 5}})});
    // Every edge is drawn from the first class to the second.
    e.reference_orientation = Orientation::all_forward(e.graph);
    e.cycle_families.push_back({"A",
                                {{0, 3, 1, 4, 2, 5}, {0, 3, 2, 5, 1, 4}, {0, 3, 1, 4}, {0, 3, 2, 5}, {1, 4, 2, 5}}});
    validate_catalog_entry(e);
    return e;
}

inline CatalogEntry make_petersen() {
    // Outer 5-cycle, spokes, inner pentagram.
    std::vector<VertexPair> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
    for (int i = 0; i < 5; ++i) edges.push_back({i, i + 5});
    for (int i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5});
    CatalogEntry e;
    e.name = "petersen";
    e.graph = Graph(10, std::move(edges));
    for (int i = 0; i < 10; ++i) e.labels.push_back(std::to_string(i));
    e.factors.push_back({"F1", OneFactor::from_pairs(e.graph, {{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}})});
    validate_catalog_entry(e);
    return e;
}

}  // namespace detail

inline const CatalogEntry& catalog_graph(std::string_view name) {
    static const std::map<std::string, CatalogEntry, std::less<>> entries = [] {
        std::map<std::string, CatalogEntry, std::less<>> m;
        for (CatalogEntry e : {detail::make_wagner(), detail::make_cubeplex(), detail::make_twinplex(),
                               detail::make_k33(), detail::make_petersen()})
            m.emplace(e.name, std::move(e));
        return m;
    }();
    auto it = entries.find(name);
    if (it == entries.end()) throw std::invalid_argument("unknown catalog graph '" + std::string(name) + "'");
    return it->second;
}

inline std::vector<std::string> catalog_names() { return {"cubeplex", "k33", "petersen", "twinplex", "wagner"}; }

}  // namespace pfaff
