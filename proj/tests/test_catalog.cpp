#include <doctest.h>

#include <set>

#include "pfaff/catalog.hpp"
#include "pfaff/cycles.hpp"
#include "pfaff/graph.hpp"
#include "pfaff/matching.hpp"

using namespace pfaff;

namespace {

bool cubic(const Graph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != 3) return false;
    return true;
}

Graph minus_edges(const Graph& g, std::vector<VertexPair> pairs) {
    std::vector<int> idx;
    for (auto [u, v] : pairs) idx.push_back(*g.edge_index(u, v));
    return delete_edges(g, idx);
}

}  // namespace

TEST_CASE("unknown catalog name") { CHECK_THROWS_AS(catalog_graph("moebius"), std::invalid_argument); }

TEST_CASE("wagner graph structure") {
    const CatalogEntry& w = catalog_graph("wagner");
    CHECK(w.graph.vertex_count() == 8);
    CHECK(w.graph.edge_count() == 12);
    CHECK(cubic(w.graph));
    for (int i = 0; i < 8; ++i) CHECK(w.graph.has_edge(i, (i + 1) % 8));
    for (int i = 0; i < 4; ++i) CHECK(w.graph.has_edge(i, i + 4));
    // F1 is the chord factor, F2 alternate rim edges.
    CHECK(w.factor("F1").contains_edge(*w.graph.edge_index(0, 4)));
    CHECK(w.factor("F2").contains_edge(*w.graph.edge_index(0, 1)));
    CHECK(w.edge_e == VertexPair{0, 7});
    CHECK(w.edge_f == VertexPair{3, 4});
    // Removing the distinguished pair leaves a bipartite graph.
    CHECK(is_bipartite(minus_edges(w.graph, {{0, 7}, {3, 4}})));
    CHECK_FALSE(is_bipartite(w.graph));
}

TEST_CASE("cubeplex structure") {
    const CatalogEntry& e = catalog_graph("cubeplex");
    CHECK(e.graph.vertex_count() == 12);
    CHECK(e.graph.edge_count() == 18);
    CHECK(cubic(e.graph));
    // c-i and f-l are the two chords whose removal leaves a bipartite graph.
    CHECK(is_bipartite(minus_edges(e.graph, {{2, 8}, {5, 11}})));
    CHECK_FALSE(is_bipartite(e.graph));
    // Family members are alternating cycles of the named factor.
    const OneFactor& f1 = e.factor("F1");
    for (const auto& cyc : e.cycle_family("A")) CHECK_NOTHROW(AlternatingCycle::create(e.graph, f1, cyc));
}

TEST_CASE("twinplex structure") {
    const CatalogEntry& e = catalog_graph("twinplex");
    CHECK(e.graph.vertex_count() == 12);
    CHECK(e.graph.edge_count() == 18);
    CHECK(cubic(e.graph));
    CHECK(is_bipartite(minus_edges(e.graph, {{8, 9}, {4, 5}})));  // rim edges i-j and e-f
    CHECK_FALSE(is_bipartite(e.graph));
    const OneFactor& f2 = e.factor("F2");
    for (const auto& cyc : e.cycle_family("A")) CHECK_NOTHROW(AlternatingCycle::create(e.graph, f2, cyc));
}

TEST_CASE("k33 structure") {
    const CatalogEntry& e = catalog_graph("k33");
    CHECK(e.graph.vertex_count() == 6);
    CHECK(e.graph.edge_count() == 9);
    CHECK(cubic(e.graph));
    CHECK(is_bipartite(e.graph));
    const OneFactor& f3 = e.factor("F3");
    CHECK(f3.partner(0) == 3);
    CHECK(f3.partner(1) == 4);
    CHECK(f3.partner(2) == 5);
    for (const auto& cyc : e.cycle_family("A")) CHECK_NOTHROW(AlternatingCycle::create(e.graph, f3, cyc));
}

TEST_CASE("petersen structure") {
    const CatalogEntry& e = catalog_graph("petersen");
    CHECK(e.graph.vertex_count() == 10);
    CHECK(e.graph.edge_count() == 15);
    CHECK(cubic(e.graph));
    // Girth 5: no cycle of length 3 or 4 means no two adjacent vertices share
    // a neighbor and no two non-adjacent vertices share two neighbors.
    for (int u = 0; u < 10; ++u)
        for (int v = u + 1; v < 10; ++v) {
            int common = 0;
            for (int w = 0; w < 10; ++w)
                if (w != u && w != v && e.graph.has_edge(u, w) && e.graph.has_edge(v, w)) ++common;
            if (e.graph.has_edge(u, v))
                CHECK(common == 0);
            else
                CHECK(common <= 1);
        }
    CHECK(e.factor("F1").contains_edge(*e.graph.edge_index(0, 5)));
}

TEST_CASE("wagner skew-pair family members alternate with respect to F2") {
    const CatalogEntry& w = catalog_graph("wagner");
    const OneFactor& f2 = w.factor("F2");
    for (const auto& cyc : w.cycle_family("F2_skew_pair")) CHECK_NOTHROW(AlternatingCycle::create(w.graph, f2, cyc));
}

TEST_CASE("catalog factors are valid and labels cover all vertices") {
    for (const std::string& name : catalog_names()) {
        const CatalogEntry& e = catalog_graph(name);
        CHECK(static_cast<int>(e.labels.size()) == e.graph.vertex_count());
        std::set<std::string> distinct(e.labels.begin(), e.labels.end());
        CHECK(distinct.size() == e.labels.size());
        for (const auto& [fname, f] : e.factors) {
            (void)fname;
            CHECK(static_cast<int>(2 * f.size()) == e.graph.vertex_count());
        }
    }
}
